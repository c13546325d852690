//! Baskets for every admissible (chi, i(X)) pair.
use orbibound::basket::{chi_range, enumerate_baskets, ADMISSIBLE_INDICES};

fn main() -> orbibound::Result<()> {
    for index in ADMISSIBLE_INDICES {
        for chi in chi_range(index) {
            let found = enumerate_baskets(chi, index)?;
            println!("i(X)={index:<2} chi={chi}: {} baskets", found.len());
            for b in found.iter().take(4) {
                println!("    {b}");
            }
            if found.len() > 4 {
                println!("    ...");
            }
        }
    }
    Ok(())
}
