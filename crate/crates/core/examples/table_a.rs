use orbibound::reid::{periodic_contribution_sum, table_a};

fn main() {
    for (p, row) in table_a() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("{p:<7} {}   sum = {}", cells.join(" "), periodic_contribution_sum(p));
    }
}
