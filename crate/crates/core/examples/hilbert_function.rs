//! h0(mL) at the lower corner for the i(X) = 5 basket with all indices 0.
use orbibound::rational::q;
use orbibound::reid::{h0_exact, h0_lower_bound, MinimaRule, Numerics, ResidueConstraint};

fn main() -> orbibound::Result<()> {
    let basket: orbibound::Basket = "5x(1,5)".parse()?;
    let n = Numerics::from_basket(basket.clone(), q(1, 5), q(1, 5))?;
    for m in 1..=8 {
        let exact = h0_exact(&n, m, &[0; 5])?;
        let free = h0_lower_bound(&n, m as u32, &ResidueConstraint::all_free(&basket), MinimaRule::StrideAware)?;
        println!("m={m}  h0 (indices 0) = {exact:<6}  worst case >= {free}");
    }
    Ok(())
}
