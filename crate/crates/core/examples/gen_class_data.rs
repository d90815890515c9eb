//! Regenerates `data/weyl_classes.txt`.
//!
//! G2, F4 and E6 come from full enumeration; E7 and E8 from the
//! double-coset census. Usage: `cargo run --release --example gen_class_data > data/weyl_classes.txt`

use std::time::Instant;

use exlie::rootdata::GroupType;
use exlie::weylgroup::{class_census, classes_by_enumeration, format_class_data, validate_class_table, WeylGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut tables = Vec::new();
    for g in GroupType::ALL {
        let start = Instant::now();
        let wg = WeylGroup::new(g);
        let table = match g {
            GroupType::G2 | GroupType::F4 | GroupType::E6 => classes_by_enumeration(&wg, false)?.table,
            GroupType::E7 | GroupType::E8 => class_census(&wg)?,
        };
        let violations = validate_class_table(&wg, &table);
        for v in &violations {
            eprintln!("{}: {}", g, v);
        }
        if !violations.is_empty() {
            return Err(format!("{} table failed validation", g).into());
        }
        eprintln!("{}: {} classes in {:.1?}", g, table.classes.len(), start.elapsed());
        tables.push(table);
    }
    print!("{}", format_class_data(&tables));
    Ok(())
}
