//! Recovering the catalog description of a Jordan algebra of symmetric
//! matrices given in an arbitrary orthonormal frame.
//!
//! Each simple component is matched against the catalog by a fingerprint of
//! conjugation invariants that are computable exactly: dimensions of the
//! algebra, its associative envelope, the envelope's symmetric part and the
//! envelope's commutant.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::completion::assoc_closure;
use crate::exactla::modular::{kernel_mod, reduce, ModEchelon, ModMat, PRIMES};
use crate::exactla::{kernel, Echelon, Mat, Rational, Subspace};
use crate::jordan::{
    a_product_unchecked, check_frame, is_closed, peirce_blocks, split_simple, ClosureViolation,
    MultialgebraInstance,
};
use crate::repforge::{catalog_build, enumerate_catalog, CatalogLabel, Form};
use crate::{rng, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub ambient_n: usize,
    pub alg_dim: usize,
    pub envelope_dim: usize,
    pub envelope_sym_dim: usize,
    pub commutant_dim: usize,
}

/// Matrices in the span of `within` commuting with every element of
/// `against`. Generators are imposed one at a time, so sparse generators keep
/// the intermediate systems small.
pub fn commutant_within(within: &[Mat], against: &[Mat]) -> Vec<Mat> {
    let mut current: Vec<Mat> = within.to_vec();
    for c in against {
        if current.is_empty() {
            break;
        }
        let n = c.rows();
        let images: Vec<Vec<Rational>> = current
            .iter()
            .map(|s| s.commutator(c).to_coords())
            .collect();
        let ker = kernel(&images, n * n);
        if ker.len() == current.len() {
            continue;
        }
        current = ker
            .iter()
            .map(|k| {
                let mut m = Mat::zeros(n, n);
                for (ki, si) in k.iter().zip(&current) {
                    if !ki.is_zero() {
                        m.axpy(ki, si);
                    }
                }
                m
            })
            .collect();
    }
    current
}

fn matrix_units(n: usize) -> Vec<Mat> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| Mat::unit(n, n, i, j)))
        .collect()
}

/// How the dimension counts behind a fingerprint are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    /// Exact rational linear algebra throughout.
    Exact,
    /// Ranks over two large prime fields. Reduction mod p can only lose
    /// rank, so each envelope dimension is a lower bound and the commutant
    /// dimension an upper bound; the bounds from both primes are combined.
    /// Orders of magnitude faster on inputs in a scrambled frame, whose
    /// exact echelon forms carry entries with thousands of bits.
    #[default]
    Modular,
}

/// Fingerprint of a non-singular instance on its full ambient space.
pub fn fingerprint(inst: &MultialgebraInstance) -> Fingerprint {
    let n = inst.n();
    fingerprint_on(inst, n, &matrix_units(n), Engine::Exact)
}

/// [`fingerprint`] with a choice of engine.
pub fn fingerprint_with(inst: &MultialgebraInstance, engine: Engine) -> Fingerprint {
    let n = inst.n();
    fingerprint_on(inst, n, &matrix_units(n), engine)
}

// `carrier_units` spans `e M e` for the carrier projector e of the instance,
// so the commutant is measured on the carrier only.
fn fingerprint_on(
    inst: &MultialgebraInstance,
    carrier_dim: usize,
    carrier_units: &[Mat],
    engine: Engine,
) -> Fingerprint {
    if engine == Engine::Modular {
        if let Some(f) = fingerprint_mod_bounds(inst, carrier_dim, carrier_units, 2) {
            return f;
        }
    }
    fingerprint_exact(inst, carrier_dim, carrier_units)
}

// Bounds from the first `primes` usable primes, combined.
fn fingerprint_mod_bounds(
    inst: &MultialgebraInstance,
    carrier_dim: usize,
    carrier_units: &[Mat],
    primes: usize,
) -> Option<Fingerprint> {
    let mut best: Option<Fingerprint> = None;
    let mut used = 0;
    for &p in &PRIMES {
        let Some(f) = fingerprint_mod(inst, carrier_dim, carrier_units, p) else {
            continue;
        };
        best = Some(match best {
            None => f,
            Some(b) => Fingerprint {
                envelope_dim: b.envelope_dim.max(f.envelope_dim),
                envelope_sym_dim: b.envelope_sym_dim.max(f.envelope_sym_dim),
                commutant_dim: b.commutant_dim.min(f.commutant_dim),
                ..b
            },
        });
        used += 1;
        if used == primes {
            break;
        }
    }
    best
}

fn fingerprint_exact(
    inst: &MultialgebraInstance,
    carrier_dim: usize,
    carrier_units: &[Mat],
) -> Fingerprint {
    let env = assoc_closure(inst);
    let sym = env
        .sym_part()
        .expect("envelope of symmetric data is transpose-closed");
    // Words in Π generate the envelope when 𝒜 = span{I}, so Π has the same
    // commutant and is much sparser.
    let against = if inst.is_classical() {
        inst.pi.basis()
    } else {
        env.basis()
    };
    let comm = commutant_within(carrier_units, &against);
    Fingerprint {
        ambient_n: carrier_dim,
        alg_dim: inst.pi.dim(),
        envelope_dim: env.dim(),
        envelope_sym_dim: sym.dim(),
        commutant_dim: comm.len(),
    }
}

fn reduce_all(ms: &[Mat], p: u64) -> Option<Vec<ModMat>> {
    ms.iter().map(|m| ModMat::from_mat(m, p)).collect()
}

fn fingerprint_mod(
    inst: &MultialgebraInstance,
    carrier_dim: usize,
    carrier_units: &[Mat],
    p: u64,
) -> Option<Fingerprint> {
    let n = inst.n();
    let pb = reduce_all(&inst.pi.basis(), p)?;
    let ab = reduce_all(&inst.mults.basis(), p)?;
    let units = reduce_all(carrier_units, p)?;
    // Words in two generic elements usually span the whole envelope; when
    // they visibly contain Π they do, since they then form an algebra
    // containing Π inside its envelope.
    let (env, elems) = match generic_pair(&pb, p).filter(|_| inst.is_classical()) {
        Some(g) => {
            let (env, elems) = right_closure(&g, &g, n, p);
            if pb.iter().all(|k| env.contains(&k.data)) {
                (env, elems)
            } else {
                let steps: Vec<ModMat> = ab
                    .iter()
                    .flat_map(|a| pb.iter().map(move |k| a.mul(k)))
                    .collect();
                right_closure(&pb, &steps, n, p)
            }
        }
        None => {
            let steps: Vec<ModMat> = ab
                .iter()
                .flat_map(|a| pb.iter().map(move |k| a.mul(k)))
                .collect();
            right_closure(&pb, &steps, n, p)
        }
    };
    let sym_dim = if env.is_full() {
        n * (n + 1) / 2
    } else {
        let mut sym = ModEchelon::new(n * n, p);
        for w in &elems {
            sym.insert(&w.add(&w.transpose()).data);
        }
        sym.rank()
    };
    let comm = commutant_mod(&units, if inst.is_classical() { &pb } else { &elems }, p);
    Some(Fingerprint {
        ambient_n: carrier_dim,
        alg_dim: inst.pi.dim(),
        envelope_dim: env.rank(),
        envelope_sym_dim: sym_dim,
        commutant_dim: comm,
    })
}

fn generic_pair(pb: &[ModMat], p: u64) -> Option<Vec<ModMat>> {
    let first = pb.first()?;
    let mut r = rng::seeded(0x9e4e);
    let mut out = Vec::with_capacity(2);
    for _ in 0..2 {
        let mut g = ModMat::zeros(first.n, p);
        for k in pb {
            g.axpy(
                reduce(&rng::nonzero_small(&mut r, 9), p).expect("small integer"),
                k,
            );
        }
        out.push(g);
    }
    Some(out)
}

// Span of `start` closed under right multiplication by `steps`, with the
// elements that entered it.
fn right_closure(
    start: &[ModMat],
    steps: &[ModMat],
    n: usize,
    p: u64,
) -> (ModEchelon, Vec<ModMat>) {
    let mut env = ModEchelon::new(n * n, p);
    let mut elems: Vec<ModMat> = Vec::new();
    for k in start {
        if env.insert(&k.data) {
            elems.push(k.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() && !env.is_full() {
        for s in steps {
            let w = elems[i].mul(s);
            if env.insert(&w.data) {
                elems.push(w);
            }
        }
        i += 1;
    }
    (env, elems)
}

fn commutant_mod(within: &[ModMat], against: &[ModMat], p: u64) -> usize {
    let mut current: Vec<ModMat> = within.to_vec();
    let Some(first) = against.first() else {
        return current.len();
    };
    let n = first.n;
    let mut r = rng::seeded(0xc0a1);
    let mut generic = ModMat::zeros(n, p);
    for a in against {
        let c = reduce(&rng::nonzero_small(&mut r, 9), p).expect("small integer");
        generic.axpy(c, a);
    }
    for c in core::iter::once(&generic).chain(against) {
        if current.is_empty() {
            break;
        }
        let images: Vec<Vec<u64>> = current.iter().map(|s| s.commutator(c).data).collect();
        let ker = kernel_mod(&images, p);
        if ker.len() == current.len() {
            continue;
        }
        current = ker
            .iter()
            .map(|k| {
                let mut m = ModMat::zeros(n, p);
                for (&ki, si) in k.iter().zip(&current) {
                    if ki != 0 {
                        m.axpy(ki, si);
                    }
                }
                m
            })
            .collect();
    }
    current.len()
}

/// The fingerprint of the canonical representative of a label.
pub fn label_fingerprint(label: &CatalogLabel) -> Result<Fingerprint, Error> {
    let pi = catalog_build(label)?;
    Ok(fingerprint(&MultialgebraInstance::classical(pi)?))
}

/// Catalog labels with the given ambient size and dimension.
pub fn candidates(ambient_n: usize, alg_dim: usize) -> Vec<CatalogLabel> {
    enumerate_catalog(ambient_n)
        .into_iter()
        .filter(|l| l.ambient_n() == ambient_n && l.alg_dim() == alg_dim)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub carrier_dim: usize,
    pub alg_dim: usize,
    pub fingerprint: Fingerprint,
    /// Every catalog label whose canonical fingerprint matches. One label is
    /// the expected outcome; more is an honest ambiguity.
    pub labels: Vec<CatalogLabel>,
    /// Completeness predicted from the matched labels' forms, if they agree.
    pub complete_by_criterion: Option<bool>,
    /// Completeness computed by the completion engine.
    pub complete_direct: bool,
}

impl ComponentReport {
    pub fn verdicts_agree(&self) -> bool {
        self.complete_by_criterion == Some(self.complete_direct)
    }

    /// An irreducible component, by its label: a single copy of forms a–d.
    pub fn irreducible(&self) -> Option<bool> {
        let first = self.labels.first()?;
        let irr = |l: &CatalogLabel| l.form != Form::E && l.multiplicity == 1;
        let v = irr(first);
        self.labels.iter().all(|l| irr(l) == v).then_some(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub ambient_n: usize,
    pub null_dim: usize,
    pub components: Vec<ComponentReport>,
    pub complete: bool,
    /// Whether the shortcut (irreducible algebras are complete when
    /// the size is below 8 or not a power of two) is consistent with the
    /// computed verdicts.
    pub shortcut_consistent: bool,
}

/// Classify a Jordan subalgebra of `Sym(ℚⁿ)` with the default engine.
pub fn classify_algebra(pi: &Subspace<Rational>) -> Result<ClassificationReport, Error> {
    Classifier::new(Engine::default()).classify(pi)
}

/// A classifier that remembers the fingerprints of catalog candidates, so
/// repeated classifications only pay for the input side.
#[derive(Clone, Debug, Default)]
pub struct Classifier {
    pub engine: Engine,
    cache: BTreeMap<(usize, usize), Vec<(CatalogLabel, Fingerprint)>>,
}

impl Classifier {
    pub fn new(engine: Engine) -> Self {
        Classifier {
            engine,
            cache: BTreeMap::new(),
        }
    }

    /// Catalog labels of the given size and dimension with their exact
    /// canonical fingerprints.
    pub fn candidates(
        &mut self,
        ambient_n: usize,
        alg_dim: usize,
    ) -> Result<&[(CatalogLabel, Fingerprint)], Error> {
        if !self.cache.contains_key(&(ambient_n, alg_dim)) {
            let mut v = Vec::new();
            for l in candidates(ambient_n, alg_dim) {
                v.push((l, label_fingerprint(&l)?));
            }
            self.cache.insert((ambient_n, alg_dim), v);
        }
        Ok(&self.cache[&(ambient_n, alg_dim)])
    }

    // One prime is usually enough to hit a catalog fingerprint; the bounds
    // from further primes are only needed when it misses.
    fn match_component(
        &mut self,
        inst: &MultialgebraInstance,
        m: usize,
        units: &[Mat],
    ) -> Result<(Fingerprint, Vec<CatalogLabel>), Error> {
        let attempts: &[usize] = if self.engine == Engine::Modular {
            &[1, 2]
        } else {
            &[0]
        };
        let mut last = None;
        for &primes in attempts {
            let modular = if primes > 0 {
                fingerprint_mod_bounds(inst, m, units, primes)
            } else {
                None
            };
            let fp = modular.unwrap_or_else(|| fingerprint_exact(inst, m, units));
            let labels: Vec<CatalogLabel> = self
                .candidates(m, fp.alg_dim)?
                .iter()
                .filter(|(_, f)| *f == fp)
                .map(|(l, _)| *l)
                .collect();
            if !labels.is_empty() {
                return Ok((fp, labels));
            }
            last = Some((fp, labels));
        }
        Ok(last.expect("at least one attempt"))
    }

    /// Classify a Jordan subalgebra of `Sym(ℚⁿ)`.
    ///
    /// A component is complete exactly when its completion, the symmetric
    /// part of its envelope, has the same dimension as the component, so the
    /// direct verdict is read off the fingerprint.
    pub fn classify(&mut self, pi: &Subspace<Rational>) -> Result<ClassificationReport, Error> {
        let inst = MultialgebraInstance::classical(pi.clone())?;
        let closed = match self.engine {
            Engine::Exact => is_closed(&inst),
            Engine::Modular => closed_mod(pi),
        };
        if let Err(v) = closed {
            return Err(Error::Precondition(alloc::format!(
                "classification needs a Jordan algebra; {}",
                crate::jordan::describe_violation(&v)
            )));
        }
        let n = inst.n();
        let (null_dim, parts) = if self.engine == Engine::Modular && certified_simple_unital(pi) {
            (0, alloc::vec![(Echelon::full(n), pi.clone())])
        } else {
            let split = split_simple(pi)?;
            let parts = split
                .components
                .into_iter()
                .map(|c| (c.carrier, c.algebra))
                .collect();
            (split.null_space.rank(), parts)
        };
        let mut components = Vec::with_capacity(parts.len());
        for (carrier, algebra) in parts {
            let m = carrier.rank();
            let units = carrier_units(&carrier.rows(), n);
            let comp_inst = MultialgebraInstance::classical(algebra)?;
            let (fp, labels) = self.match_component(&comp_inst, m, &units)?;
            let complete_by_criterion = labels.first().and_then(|f| {
                let v = f.complete_by_criterion();
                labels
                    .iter()
                    .all(|l| l.complete_by_criterion() == v)
                    .then_some(v)
            });
            components.push(ComponentReport {
                carrier_dim: m,
                alg_dim: fp.alg_dim,
                fingerprint: fp,
                labels,
                complete_by_criterion,
                complete_direct: fp.envelope_sym_dim == fp.alg_dim,
            });
        }
        // Words mixing two components vanish, so the envelope is the direct
        // sum of the components' envelopes.
        let complete = components.iter().all(|c| c.complete_direct);
        let shortcut_consistent = (n >= 8 || complete)
            && components.iter().all(|c| {
                let small_or_odd = c.carrier_dim < 8 || !c.carrier_dim.is_power_of_two();
                !(c.irreducible() == Some(true) && small_or_odd) || c.complete_direct
            });
        Ok(ClassificationReport {
            ambient_n: n,
            null_dim,
            components,
            complete,
            shortcut_consistent,
        })
    }
}

// Closure under the Jordan product checked over two prime fields. A product
// outside Π mod p is outside Π over ℚ, so failures are certain and come with
// an exact witness; a pass is probabilistic.
fn closed_mod(pi: &Subspace<Rational>) -> Result<(), ClosureViolation> {
    let basis = pi.basis();
    let n = pi.ambient().0;
    for &p in PRIMES.iter().take(2) {
        let Some(pb) = reduce_all(&basis, p) else {
            continue;
        };
        let mut span = ModEchelon::new(n * n, p);
        for b in &pb {
            span.insert(&b.data);
        }
        for i in 0..pb.len() {
            for j in i..pb.len() {
                let prod = pb[i].mul(&pb[j]).add(&pb[j].mul(&pb[i]));
                if !span.contains(&prod.data) {
                    let x = &basis[i];
                    let y = &basis[j];
                    let product = a_product_unchecked(x, y, &Mat::identity(n));
                    return Err(ClosureViolation {
                        x_index: i,
                        y_index: j,
                        a_index: 0,
                        x: x.clone(),
                        y: y.clone(),
                        a: Mat::identity(n),
                        product,
                    });
                }
            }
        }
    }
    Ok(())
}

// Whether Π contains I and has a one-dimensional center, certified without
// exact elimination: over 𝔽_p the common kernel of Π and the center can
// only grow, so rank n and a center of dimension 1 mod p carry over to ℚ.
fn certified_simple_unital(pi: &Subspace<Rational>) -> bool {
    let n = pi.ambient().0;
    let basis = pi.basis();
    let certified = PRIMES.iter().take(2).any(|&p| {
        let Some(pb) = reduce_all(&basis, p) else {
            return false;
        };
        let mut rows = ModEchelon::new(n, p);
        for b in &pb {
            for i in 0..n {
                if rows.is_full() {
                    break;
                }
                rows.insert(&b.data[i * n..(i + 1) * n]);
            }
        }
        rows.is_full() && commutant_mod(&pb, &pb, p) == 1
    });
    certified && pi.contains(&Mat::identity(n)).expect("square ambient")
}

// `u vᵀ` for all pairs of carrier basis vectors: a basis of `e M e`.
fn carrier_units(vecs: &[Vec<Rational>], n: usize) -> Vec<Mat> {
    let mut out = Vec::with_capacity(vecs.len() * vecs.len());
    for u in vecs {
        for v in vecs {
            let mut x = Mat::zeros(n, n);
            for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    x.set(i, j, ui * vj);
                }
            }
            out.push(x);
        }
    }
    out
}

/// `(r, p)` for a simple algebra and a resolution of unity by unresolvable
/// idempotents: the frame size and the common off-diagonal Peirce dimension.
pub fn peirce_invariants(pi: &Subspace<Rational>, frame: &[Mat]) -> Result<(usize, usize), Error> {
    check_frame(pi, frame)?;
    let dims = peirce_blocks(pi, frame)?;
    let r = frame.len();
    if (0..r).any(|i| dims[i][i] != 1) {
        return Err(Error::InvalidFrame(
            "a diagonal Peirce space is not one-dimensional".into(),
        ));
    }
    let mut p = None;
    for i in 0..r {
        for j in i + 1..r {
            match p {
                None => p = Some(dims[i][j]),
                Some(q) if q != dims[i][j] => {
                    return Err(Error::InvalidFrame(
                        "off-diagonal Peirce spaces differ in dimension".into(),
                    ))
                }
                _ => {}
            }
        }
    }
    Ok((r, p.unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repforge::{native_frame, scramble, spin_factor};

    #[test]
    fn fingerprint_examples() {
        let f = fingerprint(&MultialgebraInstance::classical(Subspace::sym(3)).unwrap());
        assert_eq!(
            f,
            Fingerprint {
                ambient_n: 3,
                alg_dim: 6,
                envelope_dim: 9,
                envelope_sym_dim: 6,
                commutant_dim: 1
            }
        );
        let s5 = fingerprint(&MultialgebraInstance::classical(spin_factor(5).unwrap()).unwrap());
        assert_eq!((s5.alg_dim, s5.envelope_sym_dim), (5, 6));
        let sc = fingerprint(&MultialgebraInstance::classical(Subspace::scalars(4)).unwrap());
        assert_eq!(
            sc,
            Fingerprint {
                ambient_n: 4,
                alg_dim: 1,
                envelope_dim: 1,
                envelope_sym_dim: 1,
                commutant_dim: 16
            }
        );
    }

    #[test]
    fn peirce_examples() {
        let l = CatalogLabel::classical(Form::A, 4, 1);
        assert_eq!(
            peirce_invariants(&catalog_build(&l).unwrap(), &native_frame(&l).unwrap()).unwrap(),
            (4, 1)
        );
        let l = CatalogLabel::classical(Form::B, 3, 1);
        assert_eq!(
            peirce_invariants(&catalog_build(&l).unwrap(), &native_frame(&l).unwrap()).unwrap(),
            (3, 2)
        );
        let l = CatalogLabel::spin(7, 1);
        assert_eq!(
            peirce_invariants(&catalog_build(&l).unwrap(), &native_frame(&l).unwrap()).unwrap(),
            (2, 5)
        );
    }

    #[test]
    fn scrambled_round_trip() {
        for (label, complete) in [
            (CatalogLabel::classical(Form::A, 3, 1), true),
            (CatalogLabel::spin(5, 1), false),
            (CatalogLabel::twisted(6, 1, 1), false),
            (CatalogLabel::classical(Form::C, 2, 1), true),
        ] {
            let (pi, _) = scramble(&catalog_build(&label).unwrap(), 11).unwrap();
            let rep = classify_algebra(&pi).unwrap();
            assert_eq!(rep.components.len(), 1);
            let c = &rep.components[0];
            assert_eq!(c.labels, [label]);
            assert_eq!(c.complete_direct, complete);
            assert!(c.verdicts_agree());
            assert!(rep.shortcut_consistent);
        }
    }
}
