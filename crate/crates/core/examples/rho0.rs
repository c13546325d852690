use orbibound::basket::ADMISSIBLE_INDICES;
use orbibound::certify::rho0_bound;

fn main() -> orbibound::Result<()> {
    for i in ADMISSIBLE_INDICES {
        println!("i(X) = {i:<2}  rho0 <= {}", rho0_bound(i)?);
    }
    Ok(())
}
