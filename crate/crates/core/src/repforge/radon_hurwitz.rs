//! Orthogonal representations of the groups `G_p`: Radon–Hurwitz families
//! `Y_1, …, Y_{p−1}` with `Y_i² = −I`, `Y_i` skew, pairwise anticommuting.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::maps::{big_o, phi, psi, quat_q};
use super::quaternion::Quaternion;
use crate::exactla::{GaussRational, Mat, Rational, Subspace};
use crate::Error;

/// Which irreducible representation to use. For `p ≡ 0 mod 4` there are two
/// non-isomorphic ones and the caller must pick; otherwise there is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Default,
    Plus,
    Minus,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Default => "default",
            Variant::Plus => "plus",
            Variant::Minus => "minus",
        }
    }

    pub fn check(self, p: usize) -> Result<(), Error> {
        let split = p % 4 == 0;
        match (self, split) {
            (Variant::Default, false) | (Variant::Plus | Variant::Minus, true) => Ok(()),
            _ => Err(Error::InvalidVariant(self.name(), p)),
        }
    }

    /// The variants valid for `p`.
    pub fn for_p(p: usize) -> &'static [Variant] {
        if p % 4 == 0 {
            &[Variant::Plus, Variant::Minus]
        } else {
            &[Variant::Default]
        }
    }
}

/// `d(p)`: `d(1..=8) = 1, 2, 4, 4, 8, 8, 8, 8` and `d(p + 8) = 16 d(p)`.
pub fn dim_d(p: usize) -> Result<usize, Error> {
    const BASE: [usize; 8] = [1, 2, 4, 4, 8, 8, 8, 8];
    if p == 0 {
        return Err(Error::Domain("d(p) is defined for p >= 1".into()));
    }
    let (q, r) = ((p - 1) / 8, (p - 1) % 8);
    Ok(BASE[r] * 16usize.pow(q as u32))
}

fn o(q: Quaternion, h: Quaternion) -> Mat {
    big_o(&q, &h)
}

fn rho9() -> Vec<Mat> {
    let (z, one, i, j, k) = (
        Quaternion::zero(),
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
    );
    let psi_i = psi(&GaussRational::i());
    let phi_i = phi(&GaussRational::i());
    alloc::vec![
        psi_i.kron(&o(i.clone(), z.clone())),
        psi_i.kron(&o(j.clone(), z.clone())),
        psi_i.kron(&o(k.clone(), z.clone())),
        psi_i.kron(&o(z.clone(), i)),
        psi_i.kron(&o(z.clone(), j)),
        psi_i.kron(&o(z.clone(), k)),
        psi_i.kron(&o(z.clone(), one.clone())),
        phi_i.kron(&o(one, z)),
    ]
}

/// `ρ_p(a_1), …, ρ_p(a_{p−1})`, each `d(p) × d(p)`.
pub fn rho(p: usize, variant: Variant) -> Result<Vec<Mat>, Error> {
    if p < 2 {
        return Err(Error::Domain(format!("rho is defined for p >= 2, got {p}")));
    }
    variant.check(p)?;
    let (z, one, i, j, k) = (
        Quaternion::zero(),
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
    );
    let sign = |ys: Vec<Mat>, negate: bool| {
        if negate {
            ys.iter().map(Mat::neg).collect()
        } else {
            ys
        }
    };
    let ys = match p {
        2 => alloc::vec![phi(&GaussRational::i())],
        3 => alloc::vec![quat_q(&i), quat_q(&j)],
        4 => sign(
            alloc::vec![quat_q(&i), quat_q(&j), quat_q(&k)],
            variant == Variant::Minus,
        ),
        5 => alloc::vec![o(z.clone(), one), o(z.clone(), i), o(z.clone(), j), o(z, k)],
        6 => alloc::vec![
            o(z.clone(), i.clone()),
            o(z.clone(), j.clone()),
            o(z.clone(), k),
            o(i, z.clone()),
            o(j, z),
        ],
        7 => alloc::vec![
            o(z.clone(), i.clone()),
            o(z.clone(), j.clone()),
            o(z.clone(), k.clone()),
            o(i, z.clone()),
            o(j, z.clone()),
            o(k, z),
        ],
        8 => {
            // The list fixes ρ₈⁻; ρ₈⁺ is its negative.
            let minus = alloc::vec![
                o(z.clone(), one),
                o(z.clone(), i.clone()),
                o(z.clone(), j.clone()),
                o(z.clone(), k.clone()),
                o(i, z.clone()),
                o(j, z.clone()),
                o(k, z),
            ];
            sign(minus, variant == Variant::Plus)
        }
        9 => rho9(),
        _ => {
            let inner = rho(p - 8, variant)?;
            let id = Mat::identity(dim_d(p - 8)?);
            let bb = psi(&GaussRational::real(Rational::one())).kron(&Mat::identity(8));
            let mut ys: Vec<Mat> = rho9().iter().map(|y| y.kron(&id)).collect();
            ys.extend(inner.iter().map(|y| bb.kron(y)));
            ys
        }
    };
    Ok(ys)
}

/// The matrix `𝔹 = ψ(1) ⊗ I₈` used by the recursion for `p ≥ 10`.
pub fn recursion_b() -> Mat {
    psi(&GaussRational::real(Rational::one())).kron(&Mat::identity(8))
}

/// First failed relation of a candidate Radon–Hurwitz family, if any.
pub fn rh_violation(ys: &[Mat]) -> Option<String> {
    let Some(first) = ys.first() else { return None };
    let n = first.rows();
    let minus_id = Mat::identity(n).neg();
    for (a, y) in ys.iter().enumerate() {
        if y.shape() != (n, n) {
            return Some(format!("Y{} has the wrong shape", a + 1));
        }
        if y.transpose() != y.neg() {
            return Some(format!("Y{} is not skew", a + 1));
        }
        if y.mul(y) != minus_id {
            return Some(format!("Y{}^2 != -I", a + 1));
        }
        for (b, w) in ys.iter().enumerate().skip(a + 1) {
            if !y.mul(w).add(&w.mul(y)).is_zero() {
                return Some(format!("Y{} and Y{} do not anticommute", a + 1, b + 1));
            }
        }
    }
    None
}

fn sign_of(lhs: &Mat, rhs: &Mat) -> Option<i32> {
    if lhs == rhs {
        Some(1)
    } else if *lhs == rhs.neg() {
        Some(-1)
    } else {
        None
    }
}

/// `±1` according to `ρ(a₁a₂) = ±ρ(a₃)`; separates `ρ₄⁺` from `ρ₄⁻`.
pub fn rho4_product_sign(ys: &[Mat]) -> Option<i32> {
    if ys.len() != 3 {
        return None;
    }
    sign_of(&ys[0].mul(&ys[1]), &ys[2])
}

/// `±1` according to `ρ(a₂a₃a₄a₅a₆a₇) = ±ρ(a₁)`; separates `ρ₈⁺` from `ρ₈⁻`.
pub fn rho8_product_sign(ys: &[Mat]) -> Option<i32> {
    if ys.len() != 7 {
        return None;
    }
    let refs: Vec<&Mat> = ys[1..].iter().collect();
    sign_of(&Mat::product(&refs), &ys[0])
}

/// `𝒲_p = span ρ_p` and `𝒰_p = ℝI ⊕ 𝒲_p`. Both variants span the same
/// spaces, so the choice is irrelevant here.
pub fn spaces_wu(p: usize) -> Result<(Subspace<Rational>, Subspace<Rational>), Error> {
    let d = dim_d(p)?;
    let w = if p == 1 {
        Subspace::zero(1, 1)
    } else {
        let v = if p % 4 == 0 {
            Variant::Plus
        } else {
            Variant::Default
        };
        Subspace::span(d, d, &rho(p, v)?)?
    };
    let mut u = w.clone();
    u.insert(&Mat::identity(d))?;
    Ok((w, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Closed forms by residue of p mod 8.
    fn d_closed(p: usize) -> usize {
        match p % 8 {
            1 | 7 => 1 << ((p - 1) / 2),
            3 | 5 => 1 << ((p + 1) / 2),
            2 | 6 | 4 => 1 << (p / 2),
            _ => 1 << ((p - 2) / 2),
        }
    }

    #[test]
    fn dimension_function() {
        assert_eq!(dim_d(2).unwrap(), 2);
        assert_eq!(dim_d(9).unwrap(), 16);
        assert_eq!(dim_d(10).unwrap(), 32);
        assert_eq!(dim_d(12).unwrap(), 64);
        assert!(dim_d(0).is_err());
        for p in 1..=17 {
            assert_eq!(dim_d(p).unwrap(), d_closed(p), "p = {p}");
        }
    }

    #[test]
    fn families_satisfy_relations() {
        for p in 2..=12 {
            for &v in Variant::for_p(p) {
                let ys = rho(p, v).unwrap();
                assert_eq!(ys.len(), p - 1);
                assert_eq!(ys[0].rows(), dim_d(p).unwrap());
                assert_eq!(rh_violation(&ys), None, "p = {p} {v:?}");
            }
        }
    }

    #[test]
    fn variants_validated() {
        assert!(rho(4, Variant::Default).is_err());
        assert!(rho(5, Variant::Plus).is_err());
        assert!(rho(1, Variant::Default).is_err());
    }

    #[test]
    fn variant_product_signs() {
        assert_eq!(rho4_product_sign(&rho(4, Variant::Plus).unwrap()), Some(1));
        assert_eq!(
            rho4_product_sign(&rho(4, Variant::Minus).unwrap()),
            Some(-1)
        );
        assert_eq!(rho8_product_sign(&rho(8, Variant::Plus).unwrap()), Some(1));
        assert_eq!(
            rho8_product_sign(&rho(8, Variant::Minus).unwrap()),
            Some(-1)
        );
    }

    #[test]
    fn recursion_matrix_anticommutes_with_rho9() {
        let b = recursion_b();
        assert_eq!(b.mul(&b), Mat::identity(16));
        for y in rho9() {
            assert_eq!(y.mul(&b), b.mul(&y).neg());
        }
    }
}
