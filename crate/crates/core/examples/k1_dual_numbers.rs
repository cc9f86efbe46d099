//! K1 of mod k[X]/(X^2): the generators xi_a land on (a^-1, a), the kernel
//! of (b, a) -> ba, and units of R map to their squared residue.

use kcm::k1::{k1_compute, Family};
use kcm::rings::Field;

fn main() -> kcm::Result<()> {
    let p: u64 = std::env::args().nth(1).map_or(5, |s| s.parse().expect("odd prime"));
    let rep = k1_compute(Family::Dual, Field::prime(p)?, 2, 100, 0)?;
    println!("K0 = {}, K1 = {}", rep.k0, rep.group);
    for row in &rep.xi_rows {
        println!("  omega(xi_{}) = ({}, {})", row.h.display_with("X"), row.omega.first, row.omega.second.display_with("X"));
    }
    println!("mu on units ({}):", rep.unit_sampling);
    for row in rep.lambda_rows.iter().filter(|r| !r.unit.coeffs()[1].is_zero()).take(p as usize) {
        println!("  {} ↦ {}", row.unit.display_with("X"), row.image.display_with("X"));
    }
    for c in &rep.checks {
        println!("[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
    }
    Ok(())
}
