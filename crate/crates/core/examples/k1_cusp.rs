//! The cusp k[[T^2, T^3]] at precision N: lift one automorphism h of m
//! through the AR sequence, form xi_h and compare with the closed form.

use kcm::k1::{ar_lift, cusp_beta_inverse, cusp_split, lift_commutes, omega, xi_closed_form, xi_from_lift, Family, FamilyRing};
use kcm::k1::k1_compute;
use kcm::rings::Field;

fn main() -> kcm::Result<()> {
    let ring = FamilyRing::new(Family::Cusp, Field::prime(5)?, 8)?;
    let h = ring.series(&[2, 1, 3, 0, 4]);
    let (f, g) = cusp_split(&ring, &h);
    println!("h = {}  (f = {}, g = {})", h, f, g);

    let lift = ar_lift(&ring, &h)?;
    println!("beta = {}", lift.beta.display_with("T"));
    println!("diagram commutes: {}", lift_commutes(&ring, &lift)?);
    let binv = cusp_beta_inverse(&ring, &f, &g)?;
    println!("beta * beta^-1 = 1: {}", lift.beta.mul(&binv)?.is_identity());

    let xi = xi_from_lift(&ring, &lift)?;
    println!("xi_h = {}", xi.display_with("T"));
    println!("matches closed form: {}", xi == xi_closed_form(&ring, &h)?);
    let w = omega(&ring, &xi)?;
    println!("omega(xi_h) = ({}, {})", w.first, w.second);

    let rep = k1_compute(Family::Cusp, Field::prime(5)?, 8, 100, 0)?;
    println!("\nK1 = {} ({} generators, {})", rep.group, rep.xi_rows.len(), rep.generator_sampling);
    for c in &rep.checks {
        println!("[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
    }
    Ok(())
}
