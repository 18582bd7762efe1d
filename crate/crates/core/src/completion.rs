//! Associative envelopes, completions and the 3-/4-chain conditions.
//!
//! The envelope `𝔄(Π)` is the span of all words `K₁A₁K₂A₂…K_m` with `Kᵢ ∈ Π`
//! and `Aᵢ ∈ 𝒜`. Its symmetric part is the completion `⟨Π⟩`, and Π is
//! complete when the two agree.

use alloc::format;
use alloc::vec::Vec;

use crate::exactla::echelon::primitive_integer;
use crate::exactla::modular::{primes, ModEchelon, ModMat};
use crate::exactla::{Echelon, Mat, ModMemberTest, Rational, Subspace};
use crate::jordan::{is_closed, jordan_product, MultialgebraInstance};
use crate::Error;

/// The smallest subspace containing Π and closed under `(X, Y) ↦ XAY` for
/// `A ∈ 𝒜`.
pub fn assoc_closure(inst: &MultialgebraInstance) -> Subspace<Rational> {
    envelope_words(inst).0
}

// The envelope with a spanning set of words.
fn envelope_words(inst: &MultialgebraInstance) -> (Subspace<Rational>, Vec<Mat>) {
    let n = inst.n();
    // Rescaling generators leaves every span alone and keeps words integral.
    let pb: Vec<Mat> = inst.pi.basis().iter().map(|m| integral(m).0).collect();
    let ab: Vec<Mat> = inst.mults.basis().iter().map(|m| integral(m).0).collect();
    // Every word is a right extension of a shorter one by some A·K.
    let steps: Vec<Mat> = ab
        .iter()
        .flat_map(|a| pb.iter().map(move |k| a.mul(k)))
        .collect();
    // Words independent modulo a prime are independent over ℚ. Their span is
    // the envelope as soon as it contains Π and is closed under the steps,
    // which is checked exactly; an unlucky prime falls back to exact search.
    let words = modular_words(n, &pb, &steps);
    let space = Subspace::from_echelon(
        n,
        n,
        Echelon::from_vectors(n * n, words.iter().map(Mat::to_coords)),
    );
    let test = space.member_test();
    let closed = pb.iter().all(|k| test.contains(&k.to_coords()))
        && words
            .iter()
            .all(|w| steps.iter().all(|s| test.contains(&w.mul(s).to_coords())));
    if closed {
        (space, words)
    } else {
        let space = exact_closure(n, &pb, &steps);
        let words = space.basis();
        (space, words)
    }
}

fn modular_words(n: usize, pb: &[Mat], steps: &[Mat]) -> Vec<Mat> {
    let p = primes().next().expect("infinitely many primes");
    let reduce = |m: &Mat| ModMat::from_mat(m, p).expect("integral");
    let msteps: Vec<ModMat> = steps.iter().map(reduce).collect();
    let mut ech = ModEchelon::new(n * n, p);
    let mut elems: Vec<ModMat> = Vec::new();
    let mut words: Vec<Mat> = Vec::new();
    for k in pb {
        let m = reduce(k);
        if ech.insert(&m.data) {
            elems.push(m);
            words.push(k.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() && !ech.is_full() {
        for (s, ms) in steps.iter().zip(&msteps) {
            let w = elems[i].mul(ms);
            if ech.insert(&w.data) {
                elems.push(w);
                words.push(integral(&words[i].mul(s)).0);
            }
        }
        i += 1;
    }
    words
}

fn exact_closure(n: usize, pb: &[Mat], steps: &[Mat]) -> Subspace<Rational> {
    let mut space = Subspace::zero(n, n);
    let mut elems: Vec<Mat> = Vec::new();
    for k in pb {
        if space.insert(k).expect("shape") {
            elems.push(k.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() && space.dim() < n * n {
        for s in steps {
            let w = elems[i].mul(s);
            if space.insert(&w).expect("shape") {
                elems.push(w);
            }
        }
        i += 1;
    }
    space
}

/// `⟨Π⟩ = 𝔄(Π) ∩ Sym`.
pub fn completion_of(inst: &MultialgebraInstance) -> Subspace<Rational> {
    // The envelope of a symmetric pair (Π, 𝒜) is transpose-closed, since the
    // transpose of a word is the reversed word. So X ↦ X + Xᵀ maps it onto
    // its symmetric part.
    let (env, words) = envelope_words(inst);
    debug_assert!(env.is_transpose_closed());
    let n = inst.n();
    Subspace::from_echelon(
        n,
        n,
        Echelon::from_vectors(
            n * n,
            words.iter().map(|w| w.add(&w.transpose()).to_coords()),
        ),
    )
}

/// Whether `⟨Π⟩ = Π`. The instance must be closed.
pub fn is_complete(inst: &MultialgebraInstance) -> Result<bool, Error> {
    if let Err(v) = is_closed(inst) {
        return Err(Error::Precondition(format!(
            "completeness is defined for closed instances; {}",
            crate::jordan::describe_violation(&v)
        )));
    }
    Ok(completion_of(inst) == inst.pi)
}

/// Limits for the exhaustive chain search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainBudget {
    pub max_ambient: usize,
    pub max_dim: usize,
}

impl Default for ChainBudget {
    fn default() -> Self {
        ChainBudget {
            max_ambient: 32,
            max_dim: 20,
        }
    }
}

/// A chain value that left Π: `K₁A₁…K_m + K_m…A₁K₁` built from the basis
/// elements with the given indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub k_indices: Vec<usize>,
    pub a_indices: Vec<usize>,
    pub value: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub ok: bool,
    pub length: usize,
    pub witness: Option<ChainWitness>,
}

/// Check the 3-chain (`length = 3`) or 4-chain (`length = 4`) condition over
/// all basis tuples, in lexicographic order, stopping at the first witness.
pub fn chain_check(
    inst: &MultialgebraInstance,
    length: usize,
    budget: ChainBudget,
) -> Result<ChainReport, Error> {
    if length != 3 && length != 4 {
        return Err(Error::Domain(format!(
            "chain length must be 3 or 4, got {length}"
        )));
    }
    if let Err(v) = is_closed(inst) {
        return Err(Error::Precondition(format!(
            "chain conditions are checked on closed instances; {}",
            crate::jordan::describe_violation(&v)
        )));
    }
    if inst.n() > budget.max_ambient || inst.pi.dim() > budget.max_dim {
        return Err(Error::Budget(format!(
            "chain search over ambient {} and dimension {} exceeds the limits ({}, {})",
            inst.n(),
            inst.pi.dim(),
            budget.max_ambient,
            budget.max_dim
        )));
    }
    let pb = inst.pi.basis();
    let ab = inst.mults.basis();
    let mut search = ChainSearch::new(inst, &pb, &ab, length);
    let Some((ks, as_)) = search.run(&search.identity()) else {
        return Ok(ChainReport {
            ok: true,
            length,
            witness: None,
        });
    };
    let mut word = Mat::identity(inst.n());
    for (j, &k) in ks.iter().enumerate() {
        word = word.mul(&pb[k]);
        if let Some(&a) = as_.get(j) {
            word = word.mul(&ab[a]);
        }
    }
    let value = word.add(&word.transpose());
    debug_assert!(!inst.pi.contains(&value)?);
    Ok(ChainReport {
        ok: false,
        length,
        witness: Some(ChainWitness {
            k_indices: ks,
            a_indices: as_,
            value,
        }),
    })
}

// Scaled to integer entries; returns the bit length of the largest entry.
fn integral(m: &Mat) -> (Mat, u64) {
    let ints = primitive_integer(&m.to_coords());
    let bits = ints.iter().map(|x| x.bits()).max().unwrap_or(0);
    let coords: Vec<Rational> = ints.into_iter().map(Rational::from).collect();
    (Mat::from_coords(m.rows(), m.cols(), &coords), bits)
}

struct Lane {
    p: u64,
    test: ModMemberTest,
    pb: Vec<ModMat>,
    ab: Vec<ModMat>,
}

// Every basis element is scaled to an integer matrix, which moves chain
// values by nonzero factors and so leaves membership alone. The search then
// runs modulo enough primes that a residual vanishing in all of them
// vanishes over the integers; one nonvanishing residual already proves
// non-membership.
struct ChainSearch {
    lanes: Vec<Lane>,
    n: usize,
    length: usize,
    ks: Vec<usize>,
    as_: Vec<usize>,
}

impl ChainSearch {
    fn new(inst: &MultialgebraInstance, pb: &[Mat], ab: &[Mat], length: usize) -> Self {
        let n = inst.n();
        let (pb, kb): (Vec<Mat>, Vec<u64>) = pb.iter().map(integral).unzip();
        let (ab, abits): (Vec<Mat>, Vec<u64>) = ab.iter().map(integral).unzip();
        let (kb, abits) = (
            kb.into_iter().max().unwrap_or(0),
            abits.into_iter().max().unwrap_or(0),
        );
        let m = length as u64;
        let n_bits = (usize::BITS - n.leading_zeros()) as u64;
        let value_bits = 1 + (2 * m - 2) * n_bits + m * kb + (m - 1) * abits;
        let test = inst.pi.member_test();
        // Primes from `primes()` exceed 2⁶¹.
        let count = (test.residual_bits(value_bits) + 1) / 61 + 1;
        let lanes = primes()
            .filter_map(|p| {
                let reduce = |ms: &[Mat]| {
                    ms.iter()
                        .map(|m| ModMat::from_mat(m, p))
                        .collect::<Option<Vec<_>>>()
                };
                Some(Lane {
                    p,
                    test: test.reduce_mod(p),
                    pb: reduce(&pb)?,
                    ab: reduce(&ab)?,
                })
            })
            .take(count as usize)
            .collect();
        ChainSearch {
            lanes,
            n,
            length,
            ks: Vec::with_capacity(length),
            as_: Vec::with_capacity(length),
        }
    }

    fn identity(&self) -> Vec<ModMat> {
        self.lanes
            .iter()
            .map(|l| ModMat::identity(self.n, l.p))
            .collect()
    }

    // `prefix` is K₁A₁…K_j A_j (or I at the start), one matrix per lane.
    fn run(&mut self, prefix: &[ModMat]) -> Option<(Vec<usize>, Vec<usize>)> {
        let depth = self.ks.len();
        for ki in 0..self.lanes[0].pb.len() {
            self.ks.push(ki);
            let found = if depth + 1 == self.length {
                self.finish(prefix)
            } else {
                let with_k: Vec<ModMat> = self
                    .lanes
                    .iter()
                    .zip(prefix)
                    .map(|(l, x)| x.mul(&l.pb[ki]))
                    .collect();
                self.extend(&with_k)
            };
            self.ks.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn extend(&mut self, with_k: &[ModMat]) -> Option<(Vec<usize>, Vec<usize>)> {
        for ai in 0..self.lanes[0].ab.len() {
            self.as_.push(ai);
            let next: Vec<ModMat> = self
                .lanes
                .iter()
                .zip(with_k)
                .map(|(l, x)| x.mul(&l.ab[ai]))
                .collect();
            let found = self.run(&next);
            self.as_.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn finish(&self, prefix: &[ModMat]) -> Option<(Vec<usize>, Vec<usize>)> {
        // A word and its reversal give the same chain value; visit one.
        let rev_k = self.ks.iter().rev();
        let rev_a = self.as_.iter().rev();
        if rev_k
            .cmp(self.ks.iter())
            .then_with(|| rev_a.cmp(self.as_.iter()))
            == core::cmp::Ordering::Less
        {
            return None;
        }
        let last = *self.ks.last().expect("non-empty");
        let inside = self.lanes.iter().zip(prefix).all(|(l, x)| {
            let word = x.mul(&l.pb[last]);
            // The reversed word is the transpose, since every factor is symmetric.
            l.test.residual_vanishes(&word.add(&word.transpose()).data)
        });
        (!inside).then(|| (self.ks.clone(), self.as_.clone()))
    }
}

/// `Y₁Y₂Y₃Y₄ + Y₄Y₃Y₂Y₁` and whether it lies in `pi0`.
pub fn classical_4chain(pi0: &Subspace<Rational>, quad: &[Mat; 4]) -> Result<(Mat, bool), Error> {
    for y in quad {
        if !pi0.contains(y)? {
            return Err(Error::NotAMember);
        }
    }
    let v = chain4(quad);
    let inside = pi0.contains(&v)?;
    Ok((v, inside))
}

fn chain4(quad: &[Mat; 4]) -> Mat {
    let f = quad[0].mul(&quad[1]).mul(&quad[2]).mul(&quad[3]);
    let b = quad[3].mul(&quad[2]).mul(&quad[1]).mul(&quad[0]);
    f.add(&b)
}

/// A linear map defined on a subspace by the images of its canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub domain: Subspace<Rational>,
    pub images: Vec<Mat>,
}

impl LinearMap {
    pub fn from_fn(
        domain: &Subspace<Rational>,
        f: impl Fn(&Mat) -> Result<Mat, Error>,
    ) -> Result<Self, Error> {
        let images = domain
            .basis()
            .iter()
            .map(f)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearMap {
            domain: domain.clone(),
            images,
        })
    }

    pub fn identity(domain: &Subspace<Rational>) -> Self {
        LinearMap {
            domain: domain.clone(),
            images: domain.basis(),
        }
    }

    pub fn apply(&self, x: &Mat) -> Result<Mat, Error> {
        let c = self.domain.coords(x)?.ok_or(Error::NotAMember)?;
        let (r, k) = self.images.first().map_or((x.rows(), x.cols()), Mat::shape);
        let mut out = Mat::zeros(r, k);
        for (ci, im) in c.iter().zip(&self.images) {
            out.axpy(ci, im);
        }
        Ok(out)
    }

    /// Whether the map is an injective Jordan homomorphism, checked on all
    /// basis pairs.
    pub fn is_jordan_isomorphism(&self) -> Result<bool, Error> {
        let basis = self.domain.basis();
        if basis.is_empty() {
            return Ok(true);
        }
        let image_span = Subspace::span_of(&self.images)?;
        if image_span.dim() != basis.len() {
            return Ok(false);
        }
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let lhs = self.apply(&jordan_product(&basis[i], &basis[j])?)?;
                let rhs = jordan_product(&self.images[i], &self.images[j])?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Whether `T(Y₁Y₂Y₃Y₄ + Y₄Y₃Y₂Y₁) = TY₁·TY₂·TY₃·TY₄ + TY₄·TY₃·TY₂·TY₁`.
///
/// The chain value must lie in the domain of `T`.
pub fn iso_chain_compat(t: &LinearMap, quad: &[Mat; 4]) -> Result<bool, Error> {
    if !t.is_jordan_isomorphism()? {
        return Err(Error::NotIsomorphism(
            "map is not an injective Jordan homomorphism on its domain".into(),
        ));
    }
    let value = chain4(quad);
    if !t.domain.contains(&value)? {
        return Err(Error::Domain(
            "the chain value lies outside the domain of the map".into(),
        ));
    }
    let images = [
        t.apply(&quad[0])?,
        t.apply(&quad[1])?,
        t.apply(&quad[2])?,
        t.apply(&quad[3])?,
    ];
    Ok(t.apply(&value)? == chain4(&images))
}
