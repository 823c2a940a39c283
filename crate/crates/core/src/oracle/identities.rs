//! Reduction of the nested products `J×(J×(…×S))` onto the closed set
//! `{(J·S)J, S, J×S}`, checked as matrix identities.

use num_complex::Complex64;

use crate::angular_momentum::CompositeSystem;
use crate::error::Result;
use crate::operator::{
    cross_product, dot, left_mul, max_abs_diff_vec, OperatorMatrix, VectorOperator,
};

/// Max-abs entry deviation of each identity `P_1 … P_4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PnIdentityReport {
    pub deviations: [f64; 4],
}

impl PnIdentityReport {
    pub fn max(&self) -> f64 {
        self.deviations.iter().copied().fold(0.0, f64::max)
    }
}

fn combine(terms: &[(Complex64, &VectorOperator)]) -> VectorOperator {
    [0, 1, 2].map(|u| {
        let dim = terms[0].1[u].nrows();
        terms
            .iter()
            .fold(OperatorMatrix::zeros(dim, dim), |acc, (c, v)| acc + v[u].map(|z| z * c))
    })
}

/// Deviations of the four identities for generic vector operators `J`, `S`
/// with `I = J − S` and an explicit `ħ`. With `ħ = 0` and commuting
/// operators they reduce to the classical double-product rules.
pub fn pn_identity_deviations(
    j: &VectorOperator,
    s: &VectorOperator,
    hbar: f64,
) -> Result<[f64; 4]> {
    let ih = Complex64::new(0.0, hbar);
    let one = Complex64::new(1.0, 0.0);
    let h2 = hbar * hbar;

    let imp: VectorOperator = [0, 1, 2].map(|u| &j[u] - &s[u]);
    let j2 = dot(j, j)?;
    let jds = dot(j, s)?;
    let long = left_mul(&jds, j);
    let par = s.clone();
    let cross = cross_product(j, s)?;

    let p1 = cross.clone();
    let p2 = cross_product(j, &p1)?;
    let p3 = cross_product(j, &p2)?;
    let p4 = cross_product(j, &p3)?;

    let j2_par = left_mul(&j2, &par);
    let j2_cross = left_mul(&j2, &cross);
    let j2_long = left_mul(&j2, &long);
    let j2j2_par = left_mul(&j2, &j2_par);

    // ħP₁ = iħS + I×S
    let i_cross_s = cross_product(&imp, s)?;
    let rhs1 = combine(&[(ih, &par), (one, &i_cross_s)]);
    // ħ²P₂ = (J·S)J − J²S + iħ J×S
    let rhs2 = combine(&[(one, &long), (-one, &j2_par), (ih, &cross)]);
    // ħ³P₃ = −(J² + ħ²) J×S + 2iħ (J·S)J − iħ J²S
    let rhs3 = combine(&[
        (-one, &j2_cross),
        (Complex64::from(-h2), &cross),
        (ih * 2.0, &long),
        (-ih, &j2_par),
    ]);
    // ħ⁴P₄ = −(J² + 3ħ²)(J·S)J + J²(J² + ħ²)S − iħ(2J² + ħ²) J×S
    let rhs4 = combine(&[
        (-one, &j2_long),
        (Complex64::from(-3.0 * h2), &long),
        (one, &j2j2_par),
        (Complex64::from(h2), &j2_par),
        (-ih * 2.0, &j2_cross),
        (-ih * h2, &cross),
    ]);

    Ok([
        max_abs_diff_vec(&p1, &rhs1),
        max_abs_diff_vec(&p2, &rhs2),
        max_abs_diff_vec(&p3, &rhs3),
        max_abs_diff_vec(&p4, &rhs4),
    ])
}

pub fn verify_pn_identities(system: &CompositeSystem) -> Result<PnIdentityReport> {
    Ok(PnIdentityReport {
        deviations: pn_identity_deviations(system.total(), system.spin(), 1.0)?,
    })
}
