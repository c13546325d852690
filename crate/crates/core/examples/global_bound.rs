use orbibound::certify::{global_bound, paper_case_table, Mode, GORENSTEIN_BOUND};

fn main() -> orbibound::Result<()> {
    for mode in [Mode::Paper, Mode::Sharp] {
        let table = paper_case_table(mode)?;
        let cells: Vec<String> = table.iter().map(|(i, m)| format!("{i}:{m}")).collect();
        println!("{mode:<5}  1:{GORENSTEIN_BOUND} {}  global {}", cells.join(" "), global_bound(mode)?);
    }
    Ok(())
}
