//! AR matrices of the simple surface singularities: the Cartan matrix under
//! a row for the free module. All of them are injective.

use kcm::ar_quiver::{cartan_matrix, dynkin_upsilon, DynkinType};
use kcm::intlinalg::{cokernel, is_injective};

fn main() -> kcm::Result<()> {
    for name in ["A1", "A2", "A3", "A4", "D4", "D5", "D6", "E6", "E7", "E8"] {
        let ty: DynkinType = name.parse()?;
        let upsilon = dynkin_upsilon(ty)?;
        println!(
            "{ty:>3}: det C = {:>2}, injective = {}, K0 = {}",
            cartan_matrix(ty)?.determinant()?,
            is_injective(&upsilon)?,
            cokernel(&upsilon)?,
        );
    }
    println!("\nE6:\n{}", dynkin_upsilon(DynkinType::E6)?);
    Ok(())
}
