//! Spin factors `Π_𝔖N`, the twisting automorphism `T`, and the classical
//! irreducible representations of `Sym(ℝʳ)`, `𝔥(ℂʳ)` and `𝔥(ℍʳ)`.

use alloc::format;
use alloc::vec::Vec;

use super::maps::{phi, quat_q};
use super::quaternion::Quaternion;
use super::radon_hurwitz::{dim_d, spaces_wu};
use crate::exactla::{GaussRational, Mat, Rational, Subspace};
use crate::Error;

/// Half the ambient size of `Π_𝔖N`, i.e. `d(N − 2)`.
pub fn spin_block(n_spin: usize) -> Result<usize, Error> {
    if n_spin < 3 {
        return Err(Error::Domain(format!(
            "spin factors need N >= 3, got {n_spin}"
        )));
    }
    dim_d(n_spin - 2)
}

/// `Π_𝔖N = {[[λI, A], [Aᵀ, μI]] : A ∈ 𝒰_{N−2}} ⊂ Sym(ℝ^{2d(N−2)})`.
pub fn spin_factor(n_spin: usize) -> Result<Subspace<Rational>, Error> {
    let d = spin_block(n_spin)?;
    let (_, u) = spaces_wu(n_spin - 2)?;
    let z = Mat::zeros(d, d);
    let id = Mat::identity(d);
    let mut s = Subspace::zero(2 * d, 2 * d);
    s.insert(&Mat::block_diag(&[id.clone(), z.clone()]))?;
    s.insert(&Mat::block_diag(&[z.clone(), id]))?;
    for a in u.basis() {
        s.insert(&Mat::block2(&z, &a, &a.transpose(), &z))?;
    }
    Ok(s)
}

/// The two block projectors `diag(I, 0)` and `diag(0, I)` of `Π_𝔖N`.
pub fn spin_frame(n_spin: usize) -> Result<Vec<Mat>, Error> {
    let d = spin_block(n_spin)?;
    let z = Mat::zeros(d, d);
    let id = Mat::identity(d);
    Ok(alloc::vec![
        Mat::block_diag(&[id.clone(), z.clone()]),
        Mat::block_diag(&[z, id])
    ])
}

/// `T[[λI, A], [Aᵀ, μI]] = [[λI, Aᵀ], [A, μI]]`.
pub fn spin_auto_t(n_spin: usize, x: &Mat) -> Result<Mat, Error> {
    let d = spin_block(n_spin)?;
    if x.shape() != (2 * d, 2 * d) {
        return Err(Error::AmbientMismatch {
            expected: (2 * d, 2 * d),
            got: x.shape(),
        });
    }
    if !spin_factor(n_spin)?.contains(x)? {
        return Err(Error::NotAMember);
    }
    Ok(swap_off_diagonal(x, d))
}

// Assumes membership has been established.
pub(crate) fn swap_off_diagonal(x: &Mat, d: usize) -> Mat {
    let a = x.sub_block(0, d, d, d);
    let b = x.sub_block(d, 0, d, d);
    let mut out = x.clone();
    out.set_block(0, d, &b);
    out.set_block(d, 0, &a);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalKind {
    SymR,
    HermC,
    HermH,
}

impl ClassicalKind {
    /// Size of the real block representing one scalar entry.
    pub fn block(self) -> usize {
        match self {
            ClassicalKind::SymR => 1,
            ClassicalKind::HermC => 2,
            ClassicalKind::HermH => 4,
        }
    }

    /// Peirce invariant `p`: the real dimension of the scalar division algebra.
    pub fn peirce(self) -> usize {
        self.block()
    }

    fn off_diagonal_units(self) -> Vec<(Mat, Mat)> {
        match self {
            ClassicalKind::SymR => alloc::vec![(Mat::identity(1), Mat::identity(1))],
            ClassicalKind::HermC => [GaussRational::from_ints(1, 0), GaussRational::i()]
                .iter()
                .map(|z| (phi(z), phi(&z.conj())))
                .collect(),
            ClassicalKind::HermH => Quaternion::units()
                .iter()
                .map(|q| (quat_q(q), quat_q(&q.conj())))
                .collect(),
        }
    }
}

/// The block realification `(Φ(J_αβ))` of `Sym(ℝʳ)`, `𝔥(ℂʳ)` or `𝔥(ℍʳ)`.
pub fn classical_irrep(kind: ClassicalKind, r: usize) -> Result<Subspace<Rational>, Error> {
    let min_r = if kind == ClassicalKind::SymR { 1 } else { 2 };
    if r < min_r {
        return Err(Error::Domain(format!(
            "{kind:?} needs r >= {min_r}, got {r}"
        )));
    }
    let d = kind.block();
    let n = r * d;
    let id = Mat::identity(d);
    let mut s = Subspace::zero(n, n);
    for a in 0..r {
        s.insert(&Mat::unit(r, r, a, a).kron(&id))?;
    }
    let units = kind.off_diagonal_units();
    for a in 0..r {
        for b in a + 1..r {
            for (u, ubar) in &units {
                let m = Mat::unit(r, r, a, b)
                    .kron(u)
                    .add(&Mat::unit(r, r, b, a).kron(ubar));
                s.insert(&m)?;
            }
        }
    }
    Ok(s)
}

/// The diagonal frame `E_αα ⊗ I_d` of a classical irrep.
pub fn classical_frame(kind: ClassicalKind, r: usize) -> Vec<Mat> {
    let id = Mat::identity(kind.block());
    (0..r).map(|a| Mat::unit(r, r, a, a).kron(&id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{generate_jordan_closure, jordan_product};

    #[test]
    fn small_spin_factors() {
        assert_eq!(spin_factor(3).unwrap(), Subspace::sym(2));
        let s5 = spin_factor(5).unwrap();
        assert_eq!((s5.ambient().0, s5.dim()), (8, 5));
        let s6 = spin_factor(6).unwrap();
        assert_eq!((s6.ambient().0, s6.dim()), (8, 6));
        assert!(spin_factor(2).is_err());
    }

    #[test]
    fn classical_dims_and_isomorphisms() {
        assert_eq!(
            classical_irrep(ClassicalKind::SymR, 3).unwrap(),
            Subspace::sym(3)
        );
        let c2 = classical_irrep(ClassicalKind::HermC, 2).unwrap();
        assert_eq!((c2.ambient().0, c2.dim()), (4, 4));
        assert_eq!(c2, spin_factor(4).unwrap());
        let h2 = classical_irrep(ClassicalKind::HermH, 2).unwrap();
        assert_eq!((h2.ambient().0, h2.dim()), (8, 6));
        assert_eq!(h2, spin_factor(6).unwrap());
        let h3 = classical_irrep(ClassicalKind::HermH, 3).unwrap();
        assert_eq!(h3.dim(), 15);
        assert!(classical_irrep(ClassicalKind::HermC, 1).is_err());
        for (kind, r) in [
            (ClassicalKind::SymR, 3),
            (ClassicalKind::HermC, 3),
            (ClassicalKind::HermH, 3),
        ] {
            let s = classical_irrep(kind, r).unwrap();
            let closed =
                generate_jordan_closure(&s.basis(), &Subspace::scalars(s.ambient().0)).unwrap();
            assert_eq!(closed, s);
            assert!(s.contains(&Mat::identity(s.ambient().0)).unwrap());
        }
    }

    #[test]
    fn twist_is_an_involutive_automorphism() {
        let s = spin_factor(6).unwrap();
        let b = s.basis();
        for x in &b {
            let tx = spin_auto_t(6, x).unwrap();
            assert_eq!(spin_auto_t(6, &tx).unwrap(), *x);
            for y in &b {
                let lhs = spin_auto_t(6, &jordan_product(x, y).unwrap()).unwrap();
                let rhs = jordan_product(&tx, &spin_auto_t(6, y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(spin_auto_t(6, &Mat::identity(8)).unwrap(), Mat::identity(8));
        let qi = quat_q(&Quaternion::i());
        let z = Mat::zeros(4, 4);
        let x = Mat::block2(&z, &qi, &qi.transpose(), &z);
        let qmi = quat_q(&Quaternion::i().conj());
        assert_eq!(
            spin_auto_t(6, &x).unwrap(),
            Mat::block2(&z, &qmi, &qmi.transpose(), &z)
        );
        assert_eq!(
            spin_auto_t(6, &Mat::unit(8, 8, 0, 1)),
            Err(Error::NotAMember)
        );
    }
}
