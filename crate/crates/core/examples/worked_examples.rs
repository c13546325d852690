use orbibound::wps::{cross_check_reid, paper_examples, worked_example_bound};

fn main() -> orbibound::Result<()> {
    for v in paper_examples() {
        let w = worked_example_bound(&v)?;
        println!(
            "{:<24} L3={} lambda={} zeta={}  |mL| birational for m >= {}  (series agrees to m=20: {})",
            w.variety, w.l3, w.lambda, w.zeta, w.bound, cross_check_reid(&v, 20)?
        );
    }
    Ok(())
}
