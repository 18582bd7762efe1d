//! The groups `G_p` generated by `ε, a₁, …, a_{p−1}` with `ε² = 1`,
//! `a_k² = ε`, `ε` central and `a_k a_l = ε a_l a_k` for `k ≠ l`, and their
//! irreducible orthogonal representations sending `ε` to `−I`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::classify::commutant_within;
use crate::exactla::{Mat, Rational};
use crate::repforge::{dim_d, rho, Variant};
use crate::Error;

/// Largest `p` accepted; elements are stored in a `u32` mask.
pub const MAX_P: usize = 32;

/// `ε^sign · a_S`, with `S` the set bits of `mask` (bit `k−1` for `a_k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GpElement {
    pub sign: bool,
    pub mask: u32,
}

impl GpElement {
    pub const ONE: GpElement = GpElement {
        sign: false,
        mask: 0,
    };
    pub const EPSILON: GpElement = GpElement {
        sign: true,
        mask: 0,
    };

    /// The generator `a_k`, `k ≥ 1`.
    pub fn a(k: usize) -> Self {
        assert!((1..=MAX_P).contains(&k), "generator index out of range");
        GpElement {
            sign: false,
            mask: 1 << (k - 1),
        }
    }

    /// `a_S` for a set of generator indices (1-based, any order, no repeats).
    pub fn a_set(indices: &[usize]) -> Self {
        let mut mask = 0u32;
        for &k in indices {
            let bit = 1u32 << (k - 1);
            assert!(mask & bit == 0, "repeated generator index");
            mask |= bit;
        }
        GpElement { sign: false, mask }
    }

    pub fn times_epsilon(self) -> Self {
        GpElement {
            sign: !self.sign,
            ..self
        }
    }

    /// `|S|`.
    pub fn len(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// The generator indices of `S`, ascending.
    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }
}

fn check_p(p: usize) -> Result<(), Error> {
    if (2..=MAX_P).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "G_p needs 2 <= p <= {MAX_P}, got {p}"
        )))
    }
}

fn check_element(g: GpElement, p: usize) -> Result<(), Error> {
    if (g.mask as u64) >> (p - 1) != 0 {
        return Err(Error::Domain(format!(
            "element {g:?} uses generators beyond a_{}",
            p - 1
        )));
    }
    Ok(())
}

/// `g·h`. Sorting the concatenated index lists of `a_S a_T` costs one `ε` per
/// transposition and every repeated index contributes `a_k² = ε`.
pub fn gp_multiply(g: GpElement, h: GpElement) -> GpElement {
    let mut inversions = 0u32;
    let mut t = h.mask;
    while t != 0 {
        let b = t.trailing_zeros();
        // Elements of S that must move past a_{b+1}.
        inversions += (g.mask >> b >> 1).count_ones();
        t &= t - 1;
    }
    let repeated = (g.mask & h.mask).count_ones();
    let flip = (inversions + repeated) % 2 == 1;
    GpElement {
        sign: g.sign ^ h.sign ^ flip,
        mask: g.mask ^ h.mask,
    }
}

/// `g⁻¹`: since `g² ∈ {1, ε}`, it is `g` or `εg`.
pub fn gp_inverse(g: GpElement) -> GpElement {
    if gp_multiply(g, g).sign {
        g.times_epsilon()
    } else {
        g
    }
}

/// All `2^p` elements, ordered by mask then sign.
pub fn elements(p: usize) -> Result<Vec<GpElement>, Error> {
    check_p(p)?;
    if p > 24 {
        return Err(Error::Budget(format!("listing 2^{p} elements")));
    }
    Ok((0..1u32 << (p - 1))
        .flat_map(|mask| [false, true].map(|sign| GpElement { sign, mask }))
        .collect())
}

/// Conjugacy classes by direct orbit computation, each sorted, listed in
/// order of their smallest element.
pub fn conjugacy_classes(p: usize) -> Result<Vec<Vec<GpElement>>, Error> {
    let all = elements(p)?;
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for &g in &all {
        if seen.contains(&g) {
            continue;
        }
        let class: BTreeSet<GpElement> = all
            .iter()
            .map(|&h| gp_multiply(gp_multiply(h, g), gp_inverse(h)))
            .collect();
        seen.extend(class.iter().copied());
        classes.push(class.into_iter().collect());
    }
    Ok(classes)
}

/// Number of conjugacy classes stated for `G_p`: `2^{p−1} + 2` for even `p`
/// and `2^{p−1} + 1` for odd `p`.
pub fn class_count_formula(p: usize) -> usize {
    (1 << (p - 1)) + if p % 2 == 0 { 2 } else { 1 }
}

/// The image of `g` under the representation `ρ_p` of the given variant:
/// `a_S ↦ Y_{i₁}⋯Y_{i_k}` and `ε ↦ −I`.
pub fn rep_eval(p: usize, variant: Variant, g: GpElement) -> Result<Mat, Error> {
    check_p(p)?;
    check_element(g, p)?;
    let ys = rho(p, variant)?;
    Ok(rep_eval_with(&ys, dim_d(p)?, g))
}

fn rep_eval_with(ys: &[Mat], d: usize, g: GpElement) -> Mat {
    let mut m = Mat::identity(d);
    for k in g.indices() {
        m = m.mul(&ys[k - 1]);
    }
    if g.sign {
        m.neg()
    } else {
        m
    }
}

/// Dimension of the non-one-dimensional complex irreducible representations:
/// `2^{(p−1)/2}` for odd `p` and `2^{(p−2)/2}` for even `p`.
pub fn complex_irrep_dim(p: usize) -> usize {
    1 << ((p - 1) / 2)
}

/// `+1` or `−1` according to `g² = 1` or `g² = ε`, using
/// `(ε a_S)² = a_S² = ε^{r(r+1)/2}` with `r = |S|`.
pub fn square_sign(g: GpElement) -> i64 {
    let r = g.len() as u64;
    if (r * (r + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The Frobenius–Schur indicator `(1/|G_p|) Σ_g χ(g²)` of the complex
/// irreducible representations sending `ε` to `−I`. For these `χ(g²)` is
/// `±` the irrep dimension with the sign of [`square_sign`].
pub fn frobenius_schur(p: usize, variant: Variant) -> Result<Rational, Error> {
    check_p(p)?;
    variant.check(p)?;
    let total: i64 = (0..1u32 << (p - 1))
        .map(|mask| 2 * square_sign(GpElement { sign: false, mask }))
        .sum();
    Ok(Rational::new(
        total * complex_irrep_dim(p) as i64,
        1i64 << p,
    ))
}

/// [`frobenius_schur`] from explicit matrices: every `χ(g²)` is read off the
/// trace of `ρ(g)²` for the real representation `ρ_p`, which contains each
/// complex constituent with the same sign pattern, and rescaled to the
/// complex irrep dimension. Exponential in `p`; meant as a check.
pub fn frobenius_schur_by_matrices(p: usize, variant: Variant) -> Result<Rational, Error> {
    check_p(p)?;
    let ys = rho(p, variant)?;
    let d = dim_d(p)?;
    let mut sum = Rational::zero();
    for g in elements(p)? {
        let m = rep_eval_with(&ys, d, g);
        sum += &m.mul(&m).trace();
    }
    let scale = Rational::new(complex_irrep_dim(p) as i64, d as i64 * (1i64 << p));
    Ok(&sum * &scale)
}

/// Representation type read off the indicator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepType {
    Real,
    Complex,
    Quaternionic,
}

impl RepType {
    pub fn name(self) -> &'static str {
        match self {
            RepType::Real => "real",
            RepType::Complex => "complex",
            RepType::Quaternionic => "quaternionic",
        }
    }

    pub fn from_indicator(s: &Rational) -> Option<Self> {
        match s.signum() {
            1 if s.is_one() => Some(RepType::Real),
            0 => Some(RepType::Complex),
            -1 if (-s).is_one() => Some(RepType::Quaternionic),
            _ => None,
        }
    }

    /// Dimension of the real commutant of an irreducible real
    /// representation of this type.
    pub fn commutant_dim(self) -> usize {
        match self {
            RepType::Real => 1,
            RepType::Complex => 2,
            RepType::Quaternionic => 4,
        }
    }
}

/// `sign(cos(πp/4))` as a residue table: `+1` for `p ≡ 0, 1, 7`, `0` for
/// `p ≡ 2, 6` and `−1` for `p ≡ 3, 4, 5 (mod 8)`.
pub fn indicator_table(p: usize) -> i32 {
    match p % 8 {
        0 | 1 | 7 => 1,
        2 | 6 => 0,
        _ => -1,
    }
}

/// `dim {M : M ρ(a_i) = ρ(a_i) M for all i}`, solved exactly.
pub fn commutant_dim(p: usize, variant: Variant) -> Result<usize, Error> {
    check_p(p)?;
    let ys = rho(p, variant)?;
    Ok(commutant_of(&ys).len())
}

/// A basis of the commutant of a family of square matrices.
pub fn commutant_of(ms: &[Mat]) -> Vec<Mat> {
    let Some(first) = ms.first() else {
        return Vec::new();
    };
    let n = first.rows();
    let units: Vec<Mat> = (0..n)
        .flat_map(|i| (0..n).map(move |j| Mat::unit(n, n, i, j)))
        .collect();
    commutant_within(&units, ms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn all_pairs(p: usize) -> Vec<(GpElement, GpElement)> {
        let e = elements(p).unwrap();
        e.iter()
            .flat_map(|&g| e.iter().map(move |&h| (g, h)))
            .collect()
    }

    #[test]
    fn multiplication_examples() {
        let (a1, a2) = (GpElement::a(1), GpElement::a(2));
        assert_eq!(gp_multiply(a1, a1), GpElement::EPSILON);
        assert_eq!(gp_multiply(a1, a2), GpElement::a_set(&[1, 2]));
        assert_eq!(
            gp_multiply(a2, a1),
            GpElement::a_set(&[1, 2]).times_epsilon()
        );
        let x = gp_multiply(gp_multiply(a1, a2), gp_multiply(a2, a1));
        assert_eq!(x, GpElement::ONE);
        let s = GpElement::a_set(&[1, 3]);
        assert_eq!(gp_multiply(GpElement::EPSILON, s), s.times_epsilon());
    }

    // Multiply as words in the generators, applying the relations one
    // adjacent swap at a time.
    fn word_product(g: GpElement, h: GpElement) -> GpElement {
        let mut word: Vec<usize> = g.indices();
        word.extend(h.indices());
        let mut sign = g.sign ^ h.sign;
        // Bubble sort, one ε per swap of distinct generators.
        for i in 0..word.len() {
            for j in 0..word.len() - 1 - i {
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    sign ^= true;
                }
            }
        }
        let mut out: Vec<usize> = Vec::new();
        for k in word {
            if out.last() == Some(&k) {
                out.pop();
                sign ^= true;
            } else {
                out.push(k);
            }
        }
        GpElement {
            sign,
            mask: GpElement::a_set(&out).mask,
        }
    }

    #[test]
    fn multiplication_matches_word_rewriting() {
        for p in 2..=5 {
            for (g, h) in all_pairs(p) {
                assert_eq!(gp_multiply(g, h), word_product(g, h));
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive_small() {
        for p in 2..=5 {
            let e = elements(p).unwrap();
            assert_eq!(e.len(), 1 << p);
            for &g in &e {
                assert_eq!(
                    gp_multiply(g, GpElement::EPSILON),
                    gp_multiply(GpElement::EPSILON, g)
                );
                assert_eq!(gp_multiply(g, gp_inverse(g)), GpElement::ONE);
                for &h in &e {
                    for &k in &e {
                        assert_eq!(
                            gp_multiply(gp_multiply(g, h), k),
                            gp_multiply(g, gp_multiply(h, k))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn group_axioms_sampled() {
        let mut r = rng::seeded(3);
        for p in 6..=10 {
            let n = 1i64 << (p - 1);
            let mut pick = || GpElement {
                sign: rng::int_in(&mut r, 0, 1) == 1,
                mask: rng::int_in(&mut r, 0, n - 1) as u32,
            };
            for _ in 0..500 {
                let (g, h, k) = (pick(), pick(), pick());
                assert_eq!(
                    gp_multiply(gp_multiply(g, h), k),
                    gp_multiply(g, gp_multiply(h, k))
                );
                assert_eq!(
                    gp_multiply(g, GpElement::EPSILON),
                    gp_multiply(GpElement::EPSILON, g)
                );
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_classes(2).unwrap().len(), 4);
        assert!(conjugacy_classes(2).unwrap().iter().all(|c| c.len() == 1));
        assert_eq!(conjugacy_classes(3).unwrap().len(), 5);
        assert_eq!(conjugacy_classes(4).unwrap().len(), 10);
        for p in 2..=10 {
            assert_eq!(
                conjugacy_classes(p).unwrap().len(),
                class_count_formula(p),
                "p = {p}"
            );
        }
    }

    #[test]
    fn classes_have_the_listed_shape() {
        for p in 2..=7 {
            let full = (1u32 << (p - 1)) - 1;
            for c in conjugacy_classes(p).unwrap() {
                let mask = c[0].mask;
                assert!(c.iter().all(|g| g.mask == mask));
                let singleton = mask == 0 || (p % 2 == 0 && mask == full);
                assert_eq!(
                    c.len(),
                    if singleton { 1 } else { 2 },
                    "p = {p} mask = {mask:b}"
                );
            }
        }
    }

    #[test]
    fn representation_examples() {
        let d = dim_d(4).unwrap();
        assert_eq!(
            rep_eval(4, Variant::Plus, GpElement::ONE).unwrap(),
            Mat::identity(d)
        );
        assert_eq!(
            rep_eval(4, Variant::Plus, GpElement::EPSILON).unwrap(),
            Mat::identity(d).neg()
        );
        let ys = rho(4, Variant::Plus).unwrap();
        assert_eq!(
            rep_eval(4, Variant::Plus, GpElement::a_set(&[1, 2])).unwrap(),
            ys[2]
        );
        assert!(rep_eval(5, Variant::Plus, GpElement::ONE).is_err());
        assert!(rep_eval(3, Variant::Default, GpElement::a(3)).is_err());
    }

    #[test]
    fn representation_is_a_homomorphism() {
        let mut r = rng::seeded(17);
        for p in 2..=10 {
            for &v in Variant::for_p(p) {
                let ys = rho(p, v).unwrap();
                let d = dim_d(p).unwrap();
                let n = 1i64 << (p - 1);
                let samples = if p <= 8 { 500 } else { 60 };
                for _ in 0..samples {
                    let g = GpElement {
                        sign: rng::int_in(&mut r, 0, 1) == 1,
                        mask: rng::int_in(&mut r, 0, n - 1) as u32,
                    };
                    let h = GpElement {
                        sign: rng::int_in(&mut r, 0, 1) == 1,
                        mask: rng::int_in(&mut r, 0, n - 1) as u32,
                    };
                    let lhs = rep_eval_with(&ys, d, gp_multiply(g, h));
                    assert_eq!(
                        lhs,
                        rep_eval_with(&ys, d, g).mul(&rep_eval_with(&ys, d, h)),
                        "p = {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn indicator_matches_table_and_matrices() {
        for p in 2..=10 {
            for &v in Variant::for_p(p) {
                let s = frobenius_schur(p, v).unwrap();
                assert_eq!(s, Rational::from_int(indicator_table(p) as i64), "p = {p}");
                if p <= 6 {
                    assert_eq!(frobenius_schur_by_matrices(p, v).unwrap(), s, "p = {p}");
                }
            }
        }
        assert_eq!(
            frobenius_schur(7, Variant::Default).unwrap(),
            Rational::one()
        );
        assert_eq!(
            frobenius_schur(3, Variant::Default).unwrap(),
            Rational::from_int(-1)
        );
        assert_eq!(
            frobenius_schur(2, Variant::Default).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn commutant_dimensions() {
        assert_eq!(commutant_dim(7, Variant::Default).unwrap(), 1);
        assert_eq!(commutant_dim(2, Variant::Default).unwrap(), 2);
        assert_eq!(commutant_dim(5, Variant::Default).unwrap(), 4);
        for p in 2..=10 {
            for &v in Variant::for_p(p) {
                let t = RepType::from_indicator(&frobenius_schur(p, v).unwrap()).unwrap();
                assert_eq!(commutant_dim(p, v).unwrap(), t.commutant_dim(), "p = {p}");
            }
        }
    }
}
