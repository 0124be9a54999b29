//! Area-weighted histogram of winding values and its tail sums.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::pairwise_sum;
use crate::winding::WindingField;

/// `n -> area of {θ = n}` for nonzero `n`, estimated on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingMeasure {
    counts: BTreeMap<i32, u64>,
    cell_area: f64,
    masked_area: f64,
}

impl WindingMeasure {
    /// Measure from raw cell counts per winding value (zero is ignored).
    pub fn from_counts(counts: impl IntoIterator<Item = (i32, u64)>, cell_area: f64, masked_area: f64) -> Self {
        let mut map = BTreeMap::new();
        for (n, c) in counts {
            if n != 0 && c > 0 {
                *map.entry(n).or_insert(0) += c;
            }
        }
        WindingMeasure { counts: map, cell_area, masked_area }
    }

    pub fn cell_area(&self) -> f64 {
        self.cell_area
    }

    pub fn masked_area(&self) -> f64 {
        self.masked_area
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, n: i32) -> f64 {
        self.counts.get(&n).map_or(0.0, |&c| c as f64 * self.cell_area)
    }

    /// `(n, μ(n))` in increasing `n`.
    pub fn entries(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.counts.iter().map(|(&n, &c)| (n, c as f64 * self.cell_area))
    }

    pub fn total_mass(&self) -> f64 {
        self.counts.values().sum::<u64>() as f64 * self.cell_area
    }

    pub fn max_abs_winding(&self) -> usize {
        self.counts.keys().map(|n| n.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// `Σ n^2 μ(n)`, the squared L2 norm of the winding function.
    pub fn second_moment(&self) -> f64 {
        let terms: Vec<f64> = self.entries().map(|(n, a)| f64::from(n).powi(2) * a).collect();
        pairwise_sum(&terms)
    }

    /// `n,area` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["n", "area"])?;
        for (n, a) in self.entries() {
            wtr.write_record([n.to_string(), format!("{a:.16e}")])?;
        }
        wtr.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

pub fn measure_from_field(field: &WindingField) -> WindingMeasure {
    let mut counts: BTreeMap<i32, u64> = BTreeMap::new();
    for (_, _, v) in field.unmasked() {
        if v != 0 {
            *counts.entry(v).or_insert(0) += 1;
        }
    }
    WindingMeasure::from_counts(counts, field.grid().cell_area(), field.masked_area())
}

/// `Σ n μ(n)`.
pub fn moment_sum(measure: &WindingMeasure) -> f64 {
    let terms: Vec<f64> = measure.entries().map(|(n, a)| f64::from(n) * a).collect();
    pairwise_sum(&terms)
}

/// `D_N = μ([N, ∞))` and `D⁻_N = μ((-∞, -N])` for `N = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailTable {
    plus: Vec<f64>,
    minus: Vec<f64>,
}

impl TailTable {
    pub fn from_tails(plus: Vec<f64>, minus: Vec<f64>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::InvalidParameter("tail columns differ in length".into()));
        }
        Ok(TailTable { plus, minus })
    }

    pub fn n_max(&self) -> usize {
        self.plus.len()
    }

    /// `D_N`, zero beyond the table.
    pub fn d_plus(&self, n: usize) -> f64 {
        n.checked_sub(1).and_then(|k| self.plus.get(k)).copied().unwrap_or(0.0)
    }

    pub fn d_minus(&self, n: usize) -> f64 {
        n.checked_sub(1).and_then(|k| self.minus.get(k)).copied().unwrap_or(0.0)
    }

    /// `N,D_plus,D_minus` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["N", "D_plus", "D_minus"])?;
        for n in 1..=self.n_max() {
            wtr.write_record([n.to_string(), format!("{:.16e}", self.d_plus(n)), format!("{:.16e}", self.d_minus(n))])?;
        }
        wtr.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

pub fn tails(measure: &WindingMeasure, n_max: usize) -> TailTable {
    let mut plus = vec![0u64; n_max + 1];
    let mut minus = vec![0u64; n_max + 1];
    for (&n, &c) in &measure.counts {
        let k = (n.unsigned_abs() as usize).min(n_max + 1);
        // values beyond n_max still belong to every tail up to n_max
        let col = if n > 0 { &mut plus } else { &mut minus };
        if k >= 1 {
            col[k - 1] += c;
        }
    }
    for k in (0..n_max).rev() {
        plus[k] += plus[k + 1];
        minus[k] += minus[k + 1];
    }
    let a = measure.cell_area;
    TailTable {
        plus: plus[..n_max].iter().map(|&c| c as f64 * a).collect(),
        minus: minus[..n_max].iter().map(|&c| c as f64 * a).collect(),
    }
}

/// Tail table extending to the largest winding present.
pub fn full_tails(measure: &WindingMeasure) -> TailTable {
    tails(measure, measure.max_abs_winding())
}

/// `Σ_{N>=1} (D_N - D⁻_N)`.
pub fn position_parameter(table: &TailTable) -> f64 {
    let diffs: Vec<f64> = table.plus.iter().zip(&table.minus).map(|(p, m)| p - m).collect();
    pairwise_sum(&diffs)
}

/// Mean of `π N (D_N + D⁻_N) / 2` over `N ∈ [n_lo, n_hi]`.
pub fn scale_parameter(table: &TailTable, n_lo: usize, n_hi: usize) -> Result<f64> {
    if n_lo == 0 || n_lo > n_hi || n_hi > table.n_max() {
        return Err(Error::BadWindow { lo: n_lo, hi: n_hi, n_max: table.n_max() });
    }
    let terms: Vec<f64> = (n_lo..=n_hi)
        .map(|n| PI * n as f64 * (table.d_plus(n) + table.d_minus(n)) / 2.0)
        .collect();
    Ok(pairwise_sum(&terms) / terms.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::shapes;
    use crate::winding::{winding_field, GridSpec};
    use proptest::prelude::*;

    fn measure_of(path: &crate::PlanarPath, res: usize) -> WindingMeasure {
        let grid = GridSpec::new(-1.5, -1.5, 3.0 / res as f64, res, res).unwrap();
        measure_from_field(&winding_field(path, grid).unwrap())
    }

    #[test]
    fn circle_and_double_loop() {
        let m = measure_of(&shapes::circle(4096, 1), 1024);
        assert!((m.get(1) - PI).abs() < 0.01 * PI, "{}", m.get(1));
        assert_eq!(m.max_abs_winding(), 1);
        let t = tails(&m, 3);
        assert_eq!(t.d_plus(1), m.get(1));
        assert_eq!(t.d_plus(2), 0.0);
        assert!((moment_sum(&m) - PI).abs() < 0.01 * PI);

        let d = measure_of(&shapes::circle(4096, 2), 1024);
        assert!((d.get(2) - PI).abs() < 0.01 * PI);
        assert_eq!(d.get(1), 0.0);
        let t = tails(&d, 4);
        assert_eq!(t.d_plus(1), t.d_plus(2));
        assert_eq!(t.d_plus(3), 0.0);
    }

    #[test]
    fn chord_only_path_has_empty_measure() {
        let seg = crate::PlanarPath::uniform(vec![(0.0, 0.0).into(), (1.0, 0.5).into()]).unwrap();
        let m = measure_of(&seg, 64);
        assert!(m.is_empty());
        assert_eq!(position_parameter(&full_tails(&m)), 0.0);
    }

    #[test]
    fn figure_eight_is_symmetric() {
        let m = measure_of(&shapes::figure_eight(4096), 512);
        let t = tails(&m, 2);
        assert_eq!(t.d_plus(1), t.d_minus(1));
        assert!(t.d_plus(1) > 0.5);
        assert_eq!(moment_sum(&m), 0.0);
    }

    #[test]
    fn unit_square_moment() {
        let sq = shapes::unit_square_loop();
        let grid = GridSpec::for_path(&sq, 1024).unwrap();
        let m = measure_from_field(&winding_field(&sq, grid).unwrap());
        assert!((moment_sum(&m) - 1.0).abs() < 0.01);
    }

    #[test]
    fn parabola_position() {
        let p = shapes::parabola(4096);
        let grid = GridSpec::for_path(&p, 1024).unwrap();
        let m = measure_from_field(&winding_field(&p, grid).unwrap());
        let pos = position_parameter(&full_tails(&m));
        assert!((pos - 1.0 / 6.0).abs() < 0.01 / 6.0, "{pos}");
    }

    #[test]
    fn formula_values() {
        let m = WindingMeasure::from_counts([(1, 2), (-1, 1), (0, 50)], 1.0, 0.0);
        assert_eq!(position_parameter(&full_tails(&m)), 1.0);
        assert_eq!(m.total_mass(), 3.0);
        let sym = WindingMeasure::from_counts([(3, 5), (-3, 5), (1, 2), (-1, 2)], 0.5, 0.0);
        assert_eq!(position_parameter(&full_tails(&sym)), 0.0);
    }

    #[test]
    fn scale_plug_in() {
        let n_max = 10;
        let d: Vec<f64> = (1..=n_max).map(|n| 1.0 / (2.0 * PI * n as f64)).collect();
        let t = TailTable::from_tails(d.clone(), d).unwrap();
        assert!((scale_parameter(&t, 1, 10).unwrap() - 0.5).abs() < 1e-15);
        assert!((scale_parameter(&t, 3, 3).unwrap() - 0.5).abs() < 1e-15);

        let bounded = tails(&WindingMeasure::from_counts([(1, 4), (-2, 1)], 1.0, 0.0), 8);
        assert_eq!(scale_parameter(&bounded, 3, 8).unwrap(), 0.0);

        assert!(matches!(scale_parameter(&t, 0, 3), Err(Error::BadWindow { .. })));
        assert!(matches!(scale_parameter(&t, 4, 3), Err(Error::BadWindow { .. })));
        assert!(matches!(scale_parameter(&t, 2, 11), Err(Error::BadWindow { .. })));
    }

    #[test]
    fn truncated_table_keeps_large_windings_in_tails() {
        let m = WindingMeasure::from_counts([(5, 1), (-7, 2)], 1.0, 0.0);
        let t = tails(&m, 3);
        assert_eq!((t.d_plus(3), t.d_minus(3)), (1.0, 2.0));
        assert_eq!((t.d_plus(1), t.d_minus(1)), (1.0, 2.0));
    }

    #[test]
    fn csv_exports() {
        let m = WindingMeasure::from_counts([(1, 2), (-1, 1)], 0.25, 0.0);
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().next(), Some("n,area"));
        let mut buf = Vec::new();
        tails(&m, 2).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("N,D_plus,D_minus"));
        assert_eq!(text.lines().count(), 3);
    }

    proptest! {
        #[test]
        fn abel_summation_and_monotone_tails(counts in prop::collection::vec((-30i32..30, 0u64..1000), 0..40), cell in 1e-4f64..10.0) {
            let m = WindingMeasure::from_counts(counts, cell, 0.0);
            let t = full_tails(&m);
            let pos = position_parameter(&t);
            let mom = moment_sum(&m);
            prop_assert!((pos - mom).abs() <= 1e-9 * mom.abs().max(m.total_mass()).max(1e-300));
            for n in 1..t.n_max() {
                prop_assert!(t.d_plus(n + 1) <= t.d_plus(n));
                prop_assert!(t.d_minus(n + 1) <= t.d_minus(n));
            }
            prop_assert!((t.d_plus(1) + t.d_minus(1) - m.total_mass()).abs() <= 1e-12 * m.total_mass().max(1e-300));
        }
    }
}
