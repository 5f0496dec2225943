use symplectic_lie::tableau::{check_order_conditions, tableau_by_name, TABLEAU_NAMES};

fn main() -> symplectic_lie::Result<()> {
    for name in TABLEAU_NAMES {
        let t = tableau_by_name(name)?;
        let report = check_order_conditions(&t);
        println!("{t}  built-in order check (orders 1 to 3) passes through order {}\n", report.order());
    }
    Ok(())
}
