//! Rotation-invariant multialgebras in two dimensions.
//!
//! On `𝒯 = ℂⁿ` every real-linear map has the form `K(X, Y) : u ↦ Xu + Yū`.
//! Symmetric maps are those with `X` Hermitean and `Y` complex-symmetric, the
//! multiplications are `𝒜 = {K(0, zI) : z ∈ ℂ}`, and an invariant subspace is a
//! pair (ℒ, ℳ) with ℒ a real space of Hermitean matrices and ℳ a complex
//! space of symmetric ones. Everything is checked through the real `2n × 2n`
//! picture produced by [`realify`], with ℳ kept as a real subspace closed
//! under multiplication by `i`.

use alloc::vec::Vec;
use alloc::{format, vec};

use crate::completion::{assoc_closure, completion_of};
use crate::exactla::{CMat, GaussRational, Mat, Rational, Subspace};
use crate::jordan::MultialgebraInstance;
use crate::repforge::maps::quat_q;
use crate::repforge::quaternion::Quaternion;
use crate::Error;

/// `K(X, Y)` with `X` Hermitean and `Y` complex-symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDPair {
    x: CMat,
    y: CMat,
}

impl TwoDPair {
    pub fn new(x: CMat, y: CMat) -> Result<Self, Error> {
        if !x.is_square() || x.shape() != y.shape() {
            return Err(Error::ShapeMismatch {
                expected: x.shape(),
                got: y.shape(),
            });
        }
        if !x.is_hermitian() {
            return Err(Error::Structure("X must be Hermitean".into()));
        }
        if !y.is_symmetric() {
            return Err(Error::Structure("Y must be complex-symmetric".into()));
        }
        Ok(TwoDPair { x, y })
    }

    pub fn x(&self) -> &CMat {
        &self.x
    }

    pub fn y(&self) -> &CMat {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }
}

/// The real matrix of `K(X, Y)` in the coordinates `(Re u, Im u)`:
/// `[[ReX + ReY, −ImX + ImY], [ImX + ImY, ReX − ReY]]`.
pub fn realify(k: &TwoDPair) -> Mat {
    realify_parts(&k.x, &k.y)
}

/// [`realify`] without the symmetry requirements, for arbitrary elements of
/// `End(𝒯)`.
pub fn realify_parts(x: &CMat, y: &CMat) -> Mat {
    let (rx, ix, ry, iy) = (x.re(), x.im(), y.re(), y.im());
    Mat::block2(&rx.add(&ry), &iy.sub(&ix), &ix.add(&iy), &rx.sub(&ry))
}

/// Inverse of [`realify_parts`].
pub fn unrealify(m: &Mat) -> Result<(CMat, CMat), Error> {
    let (r, c) = m.shape();
    if r != c || r % 2 != 0 {
        return Err(Error::Structure(format!(
            "expected an even square matrix, got {r}x{c}"
        )));
    }
    let n = r / 2;
    let half = Rational::new(1, 2);
    let (a, b) = (m.sub_block(0, 0, n, n), m.sub_block(0, n, n, n));
    let (cc, d) = (m.sub_block(n, 0, n, n), m.sub_block(n, n, n, n));
    let x = CMat::from_parts(&a.add(&d).scale(&half), &cc.sub(&b).scale(&half));
    let y = CMat::from_parts(&a.sub(&d).scale(&half), &cc.add(&b).scale(&half));
    Ok((x, y))
}

/// `realify` of the multiplications `{K(0, zI)}`: `span{K(0, I), K(0, iI)}`.
pub fn realified_mults(n: usize) -> Subspace<Rational> {
    let zero = CMat::zeros(n, n);
    let id = Mat::identity(n).to_complex();
    let gens = [
        realify_parts(&zero, &id),
        realify_parts(&zero, &id.scale(&GaussRational::i())),
    ];
    Subspace::span(2 * n, 2 * n, &gens).expect("shape")
}

/// The conjugation `u ↦ zu` for a unit `z` acts on `End(𝒯)` by
/// `K(X, Y) ↦ K(X, z²Y)`; this is its real matrix.
pub fn rotation(n: usize, z: &GaussRational) -> Mat {
    let zero = CMat::zeros(n, n);
    realify_parts(&Mat::identity(n).to_complex().scale(z), &zero)
}

/// A pair (ℒ, ℳ): ℒ a real space of Hermitean `n × n` matrices, ℳ a complex
/// space of symmetric ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDAlgebra {
    n: usize,
    l: Subspace<GaussRational>,
    m: Subspace<GaussRational>,
}

impl TwoDAlgebra {
    /// ℒ is the real span of `l_gens`, ℳ the complex span of `m_gens`.
    pub fn new(n: usize, l_gens: &[CMat], m_gens: &[CMat]) -> Result<Self, Error> {
        for x in l_gens {
            if x.shape() != (n, n) {
                return Err(Error::AmbientMismatch {
                    expected: (n, n),
                    got: x.shape(),
                });
            }
            if !x.is_hermitian() {
                return Err(Error::Structure("generator of L is not Hermitean".into()));
            }
        }
        for y in m_gens {
            if y.shape() != (n, n) {
                return Err(Error::AmbientMismatch {
                    expected: (n, n),
                    got: y.shape(),
                });
            }
            if !y.is_symmetric() {
                return Err(Error::Structure("generator of M is not symmetric".into()));
            }
        }
        let l = Subspace::span(n, n, l_gens)?;
        let m = Subspace::span(n, n, m_gens)?.complexify();
        Ok(TwoDAlgebra { n, l, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> &Subspace<GaussRational> {
        &self.l
    }

    /// ℳ as a real subspace.
    pub fn m(&self) -> &Subspace<GaussRational> {
        &self.m
    }

    /// Real dimensions of ℒ and ℳ.
    pub fn dims(&self) -> (usize, usize) {
        (self.l.dim(), self.m.dim())
    }

    /// `{K(X, 0) : X ∈ ℒ} ⊕ {K(0, Y) : Y ∈ ℳ}` as real symmetric matrices.
    pub fn realified_pi(&self) -> Subspace<Rational> {
        let zero = CMat::zeros(self.n, self.n);
        let gens: Vec<Mat> = self
            .l
            .basis()
            .iter()
            .map(|x| realify_parts(x, &zero))
            .chain(self.m.basis().iter().map(|y| realify_parts(&zero, y)))
            .collect();
        Subspace::span(2 * self.n, 2 * self.n, &gens).expect("shape")
    }

    /// The multialgebra instance seen by the generic engines.
    pub fn realify(&self) -> MultialgebraInstance {
        MultialgebraInstance::new(self.realified_pi(), realified_mults(self.n))
            .expect("symmetric by construction")
    }

    /// Read (ℒ, ℳ) back from a rotation-invariant subspace of `Sym(ℝ²ⁿ)`.
    pub fn from_realified(pi: &Subspace<Rational>) -> Result<Self, Error> {
        let (l, m) = split_realified(pi)?;
        let alg = TwoDAlgebra {
            n: pi.ambient().0 / 2,
            l,
            m,
        };
        if alg.realified_pi() != *pi {
            return Err(Error::Structure(
                "subspace is not rotation-invariant".into(),
            ));
        }
        if !alg.m.is_complex_linear() {
            return Err(Error::Structure("M part is not complex-linear".into()));
        }
        Ok(alg)
    }

    /// The completion `⟨Π⟩` computed on the realification and read back.
    pub fn completion(&self) -> TwoDAlgebra {
        TwoDAlgebra::from_realified(&completion_of(&self.realify()))
            .expect("completion is rotation-invariant")
    }

    /// The associative envelope as a pair (ℒ', ℳ') of real subspaces of
    /// complex matrices.
    pub fn envelope(&self) -> (Subspace<GaussRational>, Subspace<GaussRational>) {
        split_realified(&assoc_closure(&self.realify())).expect("envelope is rotation-invariant")
    }
}

/// The X and Y parts of a real subspace of `End(ℝ²ⁿ)`. The result spans the
/// projections of the basis, so it equals the subspace only when the
/// subspace is invariant under `K(X, Y) ↦ K(X, −Y)`.
pub fn split_realified(
    space: &Subspace<Rational>,
) -> Result<(Subspace<GaussRational>, Subspace<GaussRational>), Error> {
    let (r, c) = space.ambient();
    if r != c || r % 2 != 0 {
        return Err(Error::Structure(format!(
            "expected an even square ambient space, got {r}x{c}"
        )));
    }
    let n = r / 2;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for b in space.basis() {
        let (x, y) = unrealify(&b)?;
        xs.push(x);
        ys.push(y);
    }
    Ok((Subspace::span(n, n, &xs)?, Subspace::span(n, n, &ys)?))
}

/// Which closure condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoDCondition {
    /// `Y² + XXᵀ ∈ ℳ`, polarized: `XX'ᵀ + X'Xᵀ` or `YY' + Y'Y`.
    SquareInM,
    /// `YX + XY* ∈ ℒ`.
    MixedInL,
}

/// A basis pair whose product left (ℒ, ℳ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDViolation {
    pub condition: TwoDCondition,
    pub first: CMat,
    pub second: CMat,
    pub value: CMat,
}

/// Check `Y² + XXᵀ ∈ ℳ` and `YX + XY* ∈ ℒ` for all `X ∈ ℒ`, `Y ∈ ℳ` on basis
/// pairs. ℳ's real basis already contains the `i`-multiples, which covers
/// every `z` in `K(0, zI)`.
pub fn check_2d_closure(alg: &TwoDAlgebra) -> Result<(), TwoDViolation> {
    let lb = alg.l.basis();
    let mb = alg.m.basis();
    let in_l = alg.l.member_test();
    let in_m = alg.m.member_test();
    let fail = |condition, first: &CMat, second: &CMat, value| {
        Err(TwoDViolation {
            condition,
            first: first.clone(),
            second: second.clone(),
            value,
        })
    };
    for i in 0..lb.len() {
        for j in i..lb.len() {
            let v = lb[i]
                .mul(&lb[j].transpose())
                .add(&lb[j].mul(&lb[i].transpose()));
            if !in_m.contains(&v.to_coords()) {
                return fail(TwoDCondition::SquareInM, &lb[i], &lb[j], v);
            }
        }
    }
    for i in 0..mb.len() {
        for j in i..mb.len() {
            let v = mb[i].mul(&mb[j]).add(&mb[j].mul(&mb[i]));
            if !in_m.contains(&v.to_coords()) {
                return fail(TwoDCondition::SquareInM, &mb[i], &mb[j], v);
            }
        }
    }
    for x in &lb {
        for y in &mb {
            let v = y.mul(x).add(&x.mul(&y.conj_transpose()));
            if !in_l.contains(&v.to_coords()) {
                return fail(TwoDCondition::MixedInL, x, y, v);
            }
        }
    }
    Ok(())
}

/// `c X₁X₂ᵀX₃ + c̄ X₃X₂ᵀX₁`.
pub fn three_chain_value(xs: [&CMat; 3], c: &GaussRational) -> CMat {
    let mid = xs[1].transpose();
    let f = xs[0].mul(&mid).mul(xs[2]);
    let b = xs[2].mul(&mid).mul(xs[0]);
    f.scale(c).add(&b.scale(&c.conj()))
}

/// The value of the complex 3-chain and whether it lies in ℒ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeChainVerdict {
    pub value: CMat,
    pub member: bool,
}

/// Evaluate the 3-chain on a triple from ℒ.
pub fn complex_3chain(
    l: &Subspace<GaussRational>,
    xs: [&CMat; 3],
    c: &GaussRational,
) -> Result<ThreeChainVerdict, Error> {
    for x in xs {
        if !l.contains(x)? {
            return Err(Error::NotAMember);
        }
    }
    let value = three_chain_value(xs, c);
    let member = l.contains(&value)?;
    Ok(ThreeChainVerdict { value, member })
}

/// A basis triple and scalar whose 3-chain left ℒ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeChainWitness {
    pub indices: [usize; 3],
    pub c: GaussRational,
    pub value: CMat,
}

/// Search all basis triples of ℒ with `c ∈ {1, i}`; the condition is
/// real-linear in `c` and in each `Xₖ`, so this decides it for all of ℒ.
pub fn three_chain_witness(l: &Subspace<GaussRational>) -> Option<ThreeChainWitness> {
    let lb = l.basis();
    let test = l.member_test();
    let cs = [GaussRational::from_ints(1, 0), GaussRational::i()];
    for a in 0..lb.len() {
        for b in 0..lb.len() {
            for d in 0..lb.len() {
                for c in &cs {
                    let value = three_chain_value([&lb[a], &lb[b], &lb[d]], c);
                    if !test.contains(&value.to_coords()) {
                        return Some(ThreeChainWitness {
                            indices: [a, b, d],
                            c: c.clone(),
                            value,
                        });
                    }
                }
            }
        }
    }
    None
}

fn pure_units() -> [Quaternion; 3] {
    [Quaternion::i(), Quaternion::j(), Quaternion::k()]
}

/// `iQ(q)` as a complex 4×4 matrix.
pub fn i_quat(q: &Quaternion) -> CMat {
    quat_q(q).to_complex().scale(&GaussRational::i())
}

/// ℒ = `{iQ(q) : Re q = 0}`, ℳ = `{aI₄ : a ∈ ℂ}`. Closed, but the 3-chain
/// fails, so it is incomplete.
pub fn build_counterexample() -> TwoDAlgebra {
    let l: Vec<CMat> = pure_units().iter().map(i_quat).collect();
    TwoDAlgebra::new(4, &l, &[CMat::identity(4)]).expect("Hermitean and symmetric generators")
}

/// The completion of [`build_counterexample`]: real multiples of `I₄` added
/// to ℒ.
pub fn counterexample_completion() -> TwoDAlgebra {
    let mut l: Vec<CMat> = pure_units().iter().map(i_quat).collect();
    l.push(CMat::identity(4));
    TwoDAlgebra::new(4, &l, &[CMat::identity(4)]).expect("Hermitean and symmetric generators")
}

/// `{aQ(q) : a ∈ ℂ, q ∈ ℍ}` as a real subspace of complex 4×4 matrices.
pub fn complex_quaternion_span() -> Subspace<GaussRational> {
    let gens: Vec<CMat> = Quaternion::units()
        .iter()
        .map(|q| quat_q(q).to_complex())
        .collect();
    Subspace::span(4, 4, &gens).expect("shape").complexify()
}

/// A 2×2 quaternionic-Hermitean matrix `[[λ, h], [h̄, μ]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatHermitian {
    pub lambda: Rational,
    pub mu: Rational,
    pub h: Quaternion,
}

impl QuatHermitian {
    pub fn new(lambda: Rational, mu: Rational, h: Quaternion) -> Self {
        QuatHermitian { lambda, mu, h }
    }

    /// `λμ − |h|²`.
    pub fn det(&self) -> Rational {
        quat_herm_det(self)
    }

    /// Membership in `{L positive definite : det L = 1}`.
    pub fn in_unit_det_manifold(&self) -> bool {
        self.det().is_one() && self.lambda.signum() > 0
    }

    /// The 8×8 real symmetric form `[[λI₄, Q(h)], [Q(h̄), μI₄]]`.
    pub fn to_real(&self) -> Mat {
        Mat::block2(
            &Mat::scalar(4, self.lambda.clone()),
            &quat_q(&self.h),
            &quat_q(&self.h.conj()),
            &Mat::scalar(4, self.mu.clone()),
        )
    }
}

/// `λμ − |h|²`.
pub fn quat_herm_det(m: &QuatHermitian) -> Rational {
    &(&m.lambda * &m.mu) - &m.h.norm_sqr()
}

/// A basis of the trace-free symmetric 3×3 matrices:
/// `diag(1, −1, 0)`, `diag(1, 0, −1)` and the three off-diagonal units.
pub fn w2_basis() -> Vec<Mat> {
    let mut out = vec![
        Mat::from_ints(3, 3, &[1, 0, 0, 0, -1, 0, 0, 0, 0]),
        Mat::from_ints(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, -1]),
    ];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut m = Mat::zeros(3, 3);
        m.set(i, j, Rational::one());
        m.set(j, i, Rational::one());
        out.push(m);
    }
    out
}

/// `Π = (End(ℝ³) ⊗ ℬ)_sym` with `𝒜 = W₂ ⊗ I_k`, for `ℬ` the span of `b_gens`.
/// `ℬ` must be closed under products and transposes.
pub fn build_so3_multifield(b_gens: &[Mat]) -> Result<MultialgebraInstance, Error> {
    let b = Subspace::span_of(b_gens)?;
    let (k, kc) = b.ambient();
    if k != kc {
        return Err(Error::Structure("B must consist of square matrices".into()));
    }
    if !b.is_transpose_closed() {
        return Err(Error::Structure(
            "B is not closed under transposition".into(),
        ));
    }
    let bb = b.basis();
    for x in &bb {
        for y in &bb {
            if !b.contains(&x.mul(y))? {
                return Err(Error::Structure(
                    "B is not closed under multiplication".into(),
                ));
            }
        }
    }
    let n = 3 * k;
    let mut tensor = Vec::with_capacity(9 * bb.len());
    for i in 0..3 {
        for j in 0..3 {
            for y in &bb {
                tensor.push(Mat::unit(3, 3, i, j).kron(y));
            }
        }
    }
    let pi = Subspace::span(n, n, &tensor)?.sym_part()?;
    let id = Mat::identity(k);
    let mults: Vec<Mat> = w2_basis().iter().map(|w| w.kron(&id)).collect();
    MultialgebraInstance::new(pi, Subspace::span(n, n, &mults)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{chain_check, is_complete, ChainBudget};
    use crate::jordan::{generate_jordan_closure, is_closed};
    use crate::rng;

    fn c(re: i64, im: i64) -> GaussRational {
        GaussRational::from_ints(re, im)
    }

    fn cmat(n: usize, entries: &[(i64, i64)]) -> CMat {
        CMat::from_vec(n, n, entries.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn realify_examples() {
        let n = 3;
        let (id, zero) = (CMat::identity(n), CMat::zeros(n, n));
        let k = |x: &CMat, y: &CMat| realify(&TwoDPair::new(x.clone(), y.clone()).unwrap());
        assert_eq!(k(&id, &zero), Mat::identity(2 * n));
        assert_eq!(
            k(&zero, &id),
            Mat::block_diag(&[Mat::identity(n), Mat::identity(n).neg()])
        );
        let swap = Mat::block2(
            &Mat::zeros(n, n),
            &Mat::identity(n),
            &Mat::identity(n),
            &Mat::zeros(n, n),
        );
        assert_eq!(k(&zero, &id.scale(&c(0, 1))), swap);
    }

    #[test]
    fn pair_invariants_are_enforced() {
        let skew = cmat(2, &[(0, 0), (1, 0), (-1, 0), (0, 0)]);
        assert!(TwoDPair::new(skew.clone(), CMat::zeros(2, 2)).is_err());
        assert!(TwoDPair::new(CMat::zeros(2, 2), skew).is_err());
        // Hermitean but not symmetric is fine for X and not for Y.
        let h = cmat(2, &[(1, 0), (0, 1), (0, -1), (2, 0)]);
        assert!(TwoDPair::new(h.clone(), CMat::zeros(2, 2)).is_ok());
        assert!(TwoDPair::new(CMat::zeros(2, 2), h).is_err());
    }

    fn random_cmat(n: usize, r: &mut rng::Rng) -> CMat {
        let data = (0..n * n)
            .map(|_| c(rng::int_in(r, -3, 3), rng::int_in(r, -3, 3)))
            .collect();
        CMat::from_vec(n, n, data).unwrap()
    }

    fn random_hermitean(n: usize, r: &mut rng::Rng) -> CMat {
        let a = random_cmat(n, r);
        a.add(&a.conj_transpose())
    }

    fn random_symmetric(n: usize, r: &mut rng::Rng) -> CMat {
        let a = random_cmat(n, r);
        a.add(&a.transpose())
    }

    #[test]
    fn realify_is_linear_injective_and_multiplicative() {
        let mut r = rng::seeded(11);
        for _ in 0..20 {
            let (x1, y1, x2, y2) = (
                random_cmat(3, &mut r),
                random_cmat(3, &mut r),
                random_cmat(3, &mut r),
                random_cmat(3, &mut r),
            );
            let m1 = realify_parts(&x1, &y1);
            assert_eq!(unrealify(&m1).unwrap(), (x1.clone(), y1.clone()));
            assert_eq!(
                realify_parts(&x1.add(&x2), &y1.add(&y2)),
                m1.add(&realify_parts(&x2, &y2))
            );
            // K(X₁,Y₁)K(X₂,Y₂) = K(X₁X₂ + Y₁Ȳ₂, X₁Y₂ + Y₁X̄₂).
            let px = x1.mul(&x2).add(&y1.mul(&y2.conj()));
            let py = x1.mul(&y2).add(&y1.mul(&x2.conj()));
            assert_eq!(m1.mul(&realify_parts(&x2, &y2)), realify_parts(&px, &py));
            let sym = realify(
                &TwoDPair::new(random_hermitean(3, &mut r), random_symmetric(3, &mut r)).unwrap(),
            );
            assert!(sym.is_symmetric());
        }
    }

    #[test]
    fn rotation_acts_on_y_by_z_squared() {
        let mut r = rng::seeded(5);
        let x = random_hermitean(3, &mut r);
        let y = random_symmetric(3, &mut r);
        let k = realify(&TwoDPair::new(x.clone(), y.clone()).unwrap());
        // θ = π/2: K(X, −Y).
        let quarter = rotation(3, &c(0, 1));
        assert!(quarter.transpose().mul(&quarter) == Mat::identity(6));
        assert_eq!(
            quarter.mul(&k).mul(&quarter.transpose()),
            realify_parts(&x, &y.neg())
        );
        // A rational angle: z = (3 + 4i)/5.
        let z = GaussRational::new(Rational::new(3, 5), Rational::new(4, 5));
        let rot = rotation(3, &z);
        assert_eq!(
            rot.mul(&k).mul(&rot.transpose()),
            realify_parts(&x, &y.scale(&(&z * &z)))
        );
    }

    fn zero_pi(pi0: &Subspace<Rational>) -> TwoDAlgebra {
        let n = pi0.ambient().0;
        let gens: Vec<CMat> = pi0.basis().iter().map(Mat::to_complex).collect();
        TwoDAlgebra::new(n, &[], &gens).unwrap()
    }

    #[test]
    fn closure_examples() {
        let alg = zero_pi(&Subspace::sym(2));
        assert_eq!(alg.dims(), (0, 6));
        assert!(check_2d_closure(&alg).is_ok());
        assert!(check_2d_closure(&build_counterexample()).is_ok());

        let alg = TwoDAlgebra::new(4, &[i_quat(&Quaternion::i())], &[]).unwrap();
        let v = check_2d_closure(&alg).unwrap_err();
        assert_eq!(v.condition, TwoDCondition::SquareInM);
        // XXᵀ = −I₄, doubled by polarization.
        assert_eq!(v.value, CMat::scalar(4, c(-2, 0)));
    }

    fn closure_agrees(alg: &TwoDAlgebra) -> bool {
        check_2d_closure(alg).is_ok() == is_closed(&alg.realify()).is_ok()
    }

    #[test]
    fn closure_agrees_with_realified_engine() {
        let mut r = rng::seeded(23);
        let mut closed_seen = 0;
        for n in 1..=3 {
            for trial in 0..12 {
                let nl = rng::int_in(&mut r, 0, 2) as usize;
                let nm = rng::int_in(&mut r, 0, 2) as usize;
                let l: Vec<CMat> = (0..nl).map(|_| random_hermitean(n, &mut r)).collect();
                let m: Vec<CMat> = (0..nm).map(|_| random_symmetric(n, &mut r)).collect();
                let alg = TwoDAlgebra::new(n, &l, &m).unwrap();
                assert!(closure_agrees(&alg), "n = {n}, trial {trial}");
                // The generated multialgebra is rotation-invariant and closed.
                let zero = CMat::zeros(n, n);
                let mut gens: Vec<Mat> = l.iter().map(|x| realify_parts(x, &zero)).collect();
                for y in &m {
                    gens.push(realify_parts(&zero, y));
                    gens.push(realify_parts(&zero, &y.scale(&c(0, 1))));
                }
                let closed = generate_jordan_closure(&gens, &realified_mults(n)).unwrap();
                let alg = TwoDAlgebra::from_realified(&closed).unwrap();
                assert!(check_2d_closure(&alg).is_ok(), "n = {n}, trial {trial}");
                closed_seen += 1;
            }
        }
        assert!(closed_seen > 0);
        for alg in [
            build_counterexample(),
            counterexample_completion(),
            zero_pi(&Subspace::sym(3)),
        ] {
            assert!(closure_agrees(&alg));
        }
        let full_l: Vec<CMat> = {
            let mut out = Vec::new();
            for i in 0..2 {
                for j in i..2 {
                    let mut a = CMat::zeros(2, 2);
                    a.set(i, j, c(1, 0));
                    a.set(j, i, c(1, 0));
                    out.push(a.clone());
                    if i != j {
                        a.set(i, j, c(0, 1));
                        a.set(j, i, c(0, -1));
                        out.push(a);
                    }
                }
            }
            out
        };
        let full = TwoDAlgebra::new(
            2,
            &full_l,
            &[
                cmat(2, &[(1, 0), (0, 0), (0, 0), (0, 0)]),
                cmat(2, &[(0, 0), (1, 0), (1, 0), (0, 0)]),
                cmat(2, &[(0, 0), (0, 0), (0, 0), (1, 0)]),
            ],
        )
        .unwrap();
        assert_eq!(full.dims(), (4, 6));
        assert!(check_2d_closure(&full).is_ok());
        assert_eq!(full.realified_pi(), Subspace::sym(4));
    }

    #[test]
    fn three_chain_examples() {
        let [qi, qj, qk] = pure_units();
        let alg = build_counterexample();
        let (xi, xj, xk) = (i_quat(&qi), i_quat(&qj), i_quat(&qk));
        let v = complex_3chain(alg.l(), [&xi, &xj, &xk], &c(0, 1)).unwrap();
        assert_eq!(v.value, CMat::scalar(4, c(2, 0)));
        assert!(!v.member);
        // X₁X₂ᵀX₃ = iQ(q₁q₂q₃).
        assert_eq!(
            xi.mul(&xj.transpose()).mul(&xk),
            i_quat(&(&(&qi * &qj) * &qk))
        );
        let v = complex_3chain(alg.l(), [&xi, &xi, &xj], &c(0, 1)).unwrap();
        assert!(v.value.is_zero());
        assert!(v.member);
        // Real c on a repeated element reduces to the cube.
        let done = counterexample_completion();
        for x in [&xi, &CMat::identity(4)] {
            let v = complex_3chain(done.l(), [x, x, x], &c(3, 0)).unwrap();
            assert_eq!(v.value, x.mul(&x.transpose()).mul(x).scale(&c(6, 0)));
            assert!(v.member);
        }
        assert_eq!(
            complex_3chain(alg.l(), [&CMat::identity(4), &xi, &xj], &c(1, 0)),
            Err(Error::NotAMember)
        );
    }

    #[test]
    fn mixed_product_formula() {
        // c = i, Xₖ = iQ(qₖ) gives 2(q₁, q₂, q₃)I₄.
        let mut r = rng::seeded(8);
        let alg = build_counterexample();
        for _ in 0..10 {
            let qs: Vec<Quaternion> = (0..3)
                .map(|_| {
                    Quaternion::from_ints(
                        0,
                        rng::int_in(&mut r, -3, 3),
                        rng::int_in(&mut r, -3, 3),
                        rng::int_in(&mut r, -3, 3),
                    )
                })
                .collect();
            let xs: Vec<CMat> = qs.iter().map(i_quat).collect();
            let cross = Quaternion::new(
                Rational::zero(),
                &(&qs[1].q2 * &qs[2].q3) - &(&qs[1].q3 * &qs[2].q2),
                &(&qs[1].q3 * &qs[2].q1) - &(&qs[1].q1 * &qs[2].q3),
                &(&qs[1].q1 * &qs[2].q2) - &(&qs[1].q2 * &qs[2].q1),
            );
            let mixed =
                &(&(&qs[0].q1 * &cross.q1) + &(&qs[0].q2 * &cross.q2)) + &(&qs[0].q3 * &cross.q3);
            let v = complex_3chain(alg.l(), [&xs[0], &xs[1], &xs[2]], &c(0, 1)).unwrap();
            assert_eq!(
                v.value,
                CMat::scalar(4, GaussRational::real(&mixed * &Rational::from_int(2)))
            );
            assert_eq!(v.member, mixed.is_zero());
        }
    }

    #[test]
    fn counterexample_pipeline() {
        let alg = build_counterexample();
        assert_eq!(alg.dims(), (3, 2));
        assert!(check_2d_closure(&alg).is_ok());
        let w = three_chain_witness(alg.l()).expect("3-chain fails");
        assert!(!alg.l().contains(&w.value).unwrap());

        let inst = alg.realify();
        let report = chain_check(&inst, 3, ChainBudget::default()).unwrap();
        assert!(!report.ok);
        assert_eq!(is_complete(&inst), Ok(false));

        let done = alg.completion();
        assert_eq!(done, counterexample_completion());
        assert_eq!(done.dims(), (4, 2));
        assert!(alg.l().is_subspace_of(done.l()));
        assert!(three_chain_witness(done.l()).is_none());
        assert_eq!(is_complete(&done.realify()), Ok(true));

        let env = assoc_closure(&inst);
        assert_eq!(env.dim(), 16);
        assert!(env.is_transpose_closed());
        let (le, me) = alg.envelope();
        assert_eq!(le, complex_quaternion_span());
        assert_eq!(me, complex_quaternion_span());
        assert_eq!(le.dim(), 8);
    }

    #[test]
    fn three_chain_matches_realified_chain_check() {
        let mut algs = vec![
            build_counterexample(),
            counterexample_completion(),
            zero_pi(&Subspace::sym(2)),
        ];
        let mut r = rng::seeded(41);
        for _ in 0..6 {
            let n = 2;
            let zero = CMat::zeros(n, n);
            let gens = vec![realify_parts(&random_hermitean(n, &mut r), &zero)];
            let closed = generate_jordan_closure(&gens, &realified_mults(n)).unwrap();
            algs.push(TwoDAlgebra::from_realified(&closed).unwrap());
        }
        for alg in &algs {
            let generic = chain_check(&alg.realify(), 3, ChainBudget::default()).unwrap();
            assert_eq!(
                three_chain_witness(alg.l()).is_none(),
                generic.ok,
                "dims {:?}",
                alg.dims()
            );
        }
    }

    #[test]
    fn zero_pi_four_chain_reduces_to_classical() {
        use crate::repforge::catalog::{catalog_build, enumerate_catalog};
        let mut incomplete = 0;
        for label in enumerate_catalog(8) {
            let pi0 = catalog_build(&label).unwrap();
            // The full sweep lives in the integration tests.
            if pi0.dim() > 6 {
                continue;
            }
            let alg = zero_pi(&pi0);
            let generic = chain_check(&alg.realify(), 4, ChainBudget::default()).unwrap();
            let classical = chain_check(
                &MultialgebraInstance::classical(pi0).unwrap(),
                4,
                ChainBudget::default(),
            )
            .unwrap();
            assert_eq!(generic.ok, classical.ok, "{label:?}");
            incomplete += usize::from(!classical.ok);
        }
        assert!(incomplete > 0);
    }

    #[test]
    fn quaternionic_determinant() {
        let q = |l: i64, m: i64, h: Quaternion| {
            QuatHermitian::new(Rational::from_int(l), Rational::from_int(m), h)
        };
        let a = q(1, 1, Quaternion::zero());
        assert_eq!(a.det(), Rational::one());
        assert!(a.in_unit_det_manifold());
        let b = q(2, 1, Quaternion::i());
        assert_eq!(b.det(), Rational::one());
        assert!(b.in_unit_det_manifold());
        let d = q(1, 1, Quaternion::one());
        assert_eq!(d.det(), Rational::zero());
        assert!(!d.in_unit_det_manifold());
        assert!(!q(-1, -1, Quaternion::zero()).in_unit_det_manifold());
        // The real form times its adjugate-like partner is det · I₈.
        let big = q(3, 2, Quaternion::from_ints(1, 1, 0, 1));
        let m = big.to_real();
        assert!(m.is_symmetric());
        let partner = QuatHermitian::new(big.mu.clone(), big.lambda.clone(), -&big.h).to_real();
        assert_eq!(m.mul(&partner), Mat::scalar(8, big.det()));
    }

    #[test]
    fn so3_multifields_are_closed_and_complete() {
        let cases: Vec<(Vec<Mat>, usize)> = vec![
            (vec![Mat::identity(1)], 6),
            (
                (0..2)
                    .flat_map(|i| (0..2).map(move |j| Mat::unit(2, 2, i, j)))
                    .collect(),
                21,
            ),
            (
                vec![Mat::identity(2), Mat::from_ints(2, 2, &[0, 1, -1, 0])],
                9,
            ),
        ];
        for (b, dim) in cases {
            let inst = build_so3_multifield(&b).unwrap();
            assert_eq!(inst.pi.dim(), dim);
            assert!(is_closed(&inst).is_ok());
            assert_eq!(is_complete(&inst), Ok(true));
            // Adding the identity to the multiplications changes neither.
            let with_id = MultialgebraInstance::new(
                inst.pi.clone(),
                inst.mults.sum(&Subspace::scalars(inst.n())).unwrap(),
            )
            .unwrap();
            assert!(is_closed(&with_id).is_ok());
            assert_eq!(is_complete(&with_id), Ok(true));
        }
        assert_eq!(
            build_so3_multifield(&[Mat::identity(1)]).unwrap().pi,
            Subspace::sym(3)
        );
        assert!(build_so3_multifield(&[Mat::from_ints(2, 2, &[0, 1, 0, 0])]).is_err());
        let sym = [
            Mat::identity(2),
            Mat::from_ints(2, 2, &[0, 1, 1, 0]),
            Mat::from_ints(2, 2, &[1, 0, 0, -1]),
        ];
        assert!(build_so3_multifield(&sym).is_err());
    }
}
