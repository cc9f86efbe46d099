//! [A*, A*] against Ker theta for small matrix rings: strict only for
//! M2(F2), where the commutator subgroup is A3 inside S3.

use kcm::cli::parse_ring_spec;
use kcm::semilocal::{vaserstein_check, FiniteRing};

fn main() -> kcm::Result<()> {
    let mut rings: Vec<FiniteRing> = ["M2F2", "M2F3", "M3F2", "F5", "M2F5", "F2xF2", "F3xM2F2"]
        .iter()
        .map(|s| s.parse())
        .collect::<kcm::Result<_>>()?;
    if let Some(path) = std::env::args().nth(1) {
        rings.push(parse_ring_spec(&std::fs::read_to_string(path).expect("readable ring file"))?);
    }
    println!("{:<14} {:>6} {:>8} {:>9}  verdict", "ring", "|A*|", "|[A*,A*]|", "|Ker th|");
    for ring in &rings {
        let r = vaserstein_check(ring)?;
        println!("{:<14} {:>6} {:>8} {:>9}  {}", ring.to_string(), r.units, r.commutators, r.ker_theta, r.verdict);
    }
    Ok(())
}
