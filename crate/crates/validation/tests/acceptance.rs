//! Runs every acceptance criterion (or those given as arguments), prints one
//! PASS/FAIL line each and exits non-zero if any fails.

fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let failed = winding_validation::run(&only);
    if !failed.is_empty() {
        let ids: Vec<String> = failed.iter().map(|i| i.to_string()).collect();
        println!("failed criteria: {}", ids.join(", "));
        std::process::exit(1);
    }
}
