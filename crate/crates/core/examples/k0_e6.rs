//! K0 of the E6 quotient surface singularity from its AR sequences.
//!
//! Run with `cargo run --example k0_e6 [path/to/file.ar]`.

use kcm::ar_quiver::{build_upsilon, e6_surface_presentation};
use kcm::cli::parse_ar_presentation;
use kcm::intlinalg::{cokernel, is_injective, smith_normal_form};

fn main() -> kcm::Result<()> {
    let pres = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable presentation file");
            parse_ar_presentation(&text)?
        }
        None => e6_surface_presentation(),
    };
    let upsilon = build_upsilon(&pres)?;
    println!("AR matrix ({} x {}):\n{upsilon}", upsilon.rows(), upsilon.cols());
    println!("injective: {}", is_injective(&upsilon)?);

    let snf = smith_normal_form(&upsilon)?;
    let diag: Vec<String> = snf.diagonal().iter().map(ToString::to_string).collect();
    println!("Smith diagonal: [{}]", diag.join(", "));
    println!("K0(mod R) = {}", cokernel(&upsilon)?);
    Ok(())
}
