//! Elementary and Whitehead words for automorphisms of R + m, re-multiplied
//! to check them, plus the commutator identity for each elementary factor.

use kcm::k1::{
    automorphisms, commutator_identity_check, delta, elementary_factorization, multiply_word, whitehead_factorization,
    Factor, Family, FamilyRing,
};
use kcm::rings::Field;

fn main() -> kcm::Result<()> {
    for family in [Family::Dual, Family::Cusp] {
        let ring = FamilyRing::new(family, Field::prime(7)?, 6)?;
        let (table, labels, var) = (ring.table(), ring.generator_labels(), ring.var());
        println!("== {family}");
        for a in automorphisms(&ring, 3, 11) {
            let word = elementary_factorization(&a)?;
            let shown: Vec<String> = word.iter().map(|f| f.display_with(var)).collect();
            println!("A = {}", a.display_with(var));
            println!("  = {}", shown.join(" "));
            assert_eq!(multiply_word(table, &labels, &word)?, a);
            for f in &word {
                if let Factor::E { row, col, mu } = f {
                    assert!(commutator_identity_check(table, &labels, *row, *col, mu)?);
                }
            }
            let d = delta(&ring, &a)?;
            println!("  delta = ({}, {})", d.residue, d.det.display_with(var));
        }
        let r = match family {
            Family::Dual => ring.series(&[1, 3]),
            Family::Cusp => ring.series(&[1, 0, 2, 3]),
        };
        let word = whitehead_factorization(&ring, &r)?;
        let shown: Vec<String> = word.iter().map(|f| f.display_with(var)).collect();
        println!("diag({0}, ({0})^-1) = {1}", r.display_with(var), shown.join(" "));
    }
    Ok(())
}
