//! Usage: cargo run --example case_certificate -- [index] [paper|sharp]
use orbibound::certify::{case_analysis, Mode};

fn main() -> orbibound::Result<()> {
    let mut args = std::env::args().skip(1);
    let index: u32 = args.next().map_or(Ok(10), |s| s.parse()).expect("index");
    let mode: Mode = args.next().map_or(Ok(Mode::Paper), |s| s.parse())?;
    let cert = case_analysis(index, mode)?;
    for s in &cert.scenarios {
        println!(
            "{:<45} m0={} m1={} mu0<={} zeta>={}  ->  m >= {}",
            s.branch, s.m0, s.m1, s.mu0_upper, s.zeta_lb, s.final_m
        );
        for p in &s.probes {
            let h = p.h0_min.as_ref().map_or("unbounded".into(), |v| v.to_string());
            println!("    h0({}L0) >= {h}  non-pencil: {}", p.k, p.non_pencil.certified);
        }
    }
    cert.verify()?;
    println!("case bound {} (re-verified)", cert.case_bound);
    Ok(())
}
