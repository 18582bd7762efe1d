//! Jordan products, multialgebra closure, and the intrinsic structure of a
//! Jordan algebra of symmetric matrices: identity, null space, spectral
//! projections, Peirce blocks and the splitting into simple ideals.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::exactla::{kernel, poly, Echelon, Mat, Rational, Subspace};
use crate::{rng, Error};

/// A pair (Π, 𝒜) of subspaces of symmetric `n × n` matrices: Π is the
/// candidate algebra and 𝒜 spans the multiplications `X ∗_A Y`.
///
/// The classical case is `𝒜 = span{Iₙ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultialgebraInstance {
    pub pi: Subspace<Rational>,
    pub mults: Subspace<Rational>,
}

impl MultialgebraInstance {
    pub fn new(pi: Subspace<Rational>, mults: Subspace<Rational>) -> Result<Self, Error> {
        let (r, c) = pi.ambient();
        if r != c {
            return Err(Error::Structure(
                "algebra ambient space must be square".into(),
            ));
        }
        if mults.ambient() != pi.ambient() {
            return Err(Error::AmbientMismatch {
                expected: pi.ambient(),
                got: mults.ambient(),
            });
        }
        if !pi.all_symmetric() {
            return Err(Error::Structure(
                "algebra basis contains a non-symmetric matrix".into(),
            ));
        }
        if !mults.all_symmetric() {
            return Err(Error::Structure(
                "multiplication basis contains a non-symmetric matrix".into(),
            ));
        }
        Ok(MultialgebraInstance { pi, mults })
    }

    /// `(pi, span{I})`.
    pub fn classical(pi: Subspace<Rational>) -> Result<Self, Error> {
        let n = pi.ambient().0;
        Self::new(pi, Subspace::scalars(n))
    }

    pub fn n(&self) -> usize {
        self.pi.ambient().0
    }

    pub fn is_classical(&self) -> bool {
        self.mults == Subspace::scalars(self.n())
    }
}

fn check_sym_pair(a: &Mat, b: &Mat) -> Result<(), Error> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            expected: a.shape(),
            got: b.shape(),
        });
    }
    if !a.is_symmetric() || !b.is_symmetric() {
        return Err(Error::Structure(
            "Jordan products are taken between symmetric matrices".into(),
        ));
    }
    Ok(())
}

/// `(ab + ba) / 2`.
pub fn jordan_product(a: &Mat, b: &Mat) -> Result<Mat, Error> {
    check_sym_pair(a, b)?;
    Ok(sym_half(&a.mul(b)))
}

/// `(xay + yax) / 2`.
pub fn a_product(x: &Mat, y: &Mat, a: &Mat) -> Result<Mat, Error> {
    check_sym_pair(x, y)?;
    check_sym_pair(x, a)?;
    Ok(a_product_unchecked(x, y, a))
}

// For symmetric x, y, a the second term is the transpose of the first.
pub(crate) fn a_product_unchecked(x: &Mat, y: &Mat, a: &Mat) -> Mat {
    let m = if a.is_square() && is_identity(a) {
        x.mul(y)
    } else {
        x.mul(a).mul(y)
    };
    sym_half(&m)
}

fn sym_half(m: &Mat) -> Mat {
    m.add(&m.transpose()).scale_rational(&Rational::new(1, 2))
}

pub(crate) fn is_identity(a: &Mat) -> bool {
    let n = a.rows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let x = a.get(i, j);
            if i == j {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    })
}

/// A failed closure check: `x ∗_a y` left Π. Indices refer to the canonical
/// bases of Π and 𝒜.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub x_index: usize,
    pub y_index: usize,
    pub a_index: usize,
    pub x: Mat,
    pub y: Mat,
    pub a: Mat,
    pub product: Mat,
}

/// `Ok(())` when every basis product `x ∗_a y` lies in Π, otherwise the first
/// violating triple in lexicographic order.
pub fn is_closed(inst: &MultialgebraInstance) -> Result<(), ClosureViolation> {
    let pb = inst.pi.basis();
    let ab = inst.mults.basis();
    let test = inst.pi.member_test();
    for i in 0..pb.len() {
        for j in i..pb.len() {
            for (k, a) in ab.iter().enumerate() {
                let p = a_product_unchecked(&pb[i], &pb[j], a);
                if !test.contains(&p.to_coords()) {
                    return Err(ClosureViolation {
                        x_index: i,
                        y_index: j,
                        a_index: k,
                        x: pb[i].clone(),
                        y: pb[j].clone(),
                        a: a.clone(),
                        product: p,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Smallest subspace containing `generators` and closed under `∗_a` for every
/// `a` in `mults`.
pub fn generate_jordan_closure(
    generators: &[Mat],
    mults: &Subspace<Rational>,
) -> Result<Subspace<Rational>, Error> {
    let (n, _) = mults.ambient();
    for g in generators {
        if g.shape() != (n, n) {
            return Err(Error::AmbientMismatch {
                expected: (n, n),
                got: g.shape(),
            });
        }
        if !g.is_symmetric() {
            return Err(Error::Structure("generator is not symmetric".into()));
        }
    }
    let ab = mults.basis();
    let mut space = Subspace::zero(n, n);
    let mut elems: Vec<Mat> = Vec::new();
    for g in generators {
        if space.insert(g)? {
            elems.push(g.clone());
        }
    }
    // Each new element is multiplied with itself and everything before it,
    // so every pair is visited exactly once.
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            for a in &ab {
                let p = a_product_unchecked(&elems[i], &elems[j], a);
                if space.insert(&p)? {
                    elems.push(p);
                }
            }
        }
        i += 1;
    }
    Ok(space)
}

/// `{u ∈ ℚⁿ : Au = 0 for all A ∈ Π}` as a canonical echelon basis.
pub fn null_space(pi: &Subspace<Rational>) -> Echelon {
    let (n, _) = pi.ambient();
    let mut rows = Echelon::new(n);
    for b in pi.basis() {
        for i in 0..n {
            if rows.rank() == n {
                break;
            }
            rows.insert(b.row(i).to_vec());
        }
    }
    Echelon::from_vectors(n, rows.nullspace())
}

/// Orthogonal projector onto the span of the given vectors of `ℚⁿ`.
pub fn orthogonal_projector(n: usize, span: &[Vec<Rational>]) -> Mat {
    if span.is_empty() {
        return Mat::zeros(n, n);
    }
    let b = Mat::from_rows(span.to_vec())
        .expect("equal lengths")
        .transpose();
    let gram = b.transpose().mul(&b);
    let inv = gram
        .inverse()
        .expect("independent vectors have invertible Gram matrix");
    b.mul(&inv).mul(&b.transpose())
}

/// The unit of Π: the unique `e ∈ Π` with `e ∗ a = a` for all `a ∈ Π`.
pub fn identity_element(pi: &Subspace<Rational>) -> Result<Mat, Error> {
    let (n, _) = pi.ambient();
    let basis = pi.basis();
    // For a Jordan algebra of symmetric matrices the unit is the orthogonal
    // projector onto the orthogonal complement of the common kernel. Try that
    // first and fall back to solving the linear system.
    let range = null_space(pi).nullspace();
    let p = orthogonal_projector(n, &range);
    let acts_as_unit = |e: &Mat| basis.iter().all(|b| sym_half(&e.mul(b)) == *b);
    if pi.contains(&p)? && acts_as_unit(&p) {
        return Ok(p);
    }
    let images: Vec<Vec<Rational>> = basis
        .iter()
        .map(|bk| {
            basis
                .iter()
                .flat_map(|bj| sym_half(&bk.mul(bj)).to_coords())
                .collect()
        })
        .collect();
    let target: Vec<Rational> = basis.iter().flat_map(Mat::to_coords).collect();
    let c = crate::exactla::solve_combination(&images, &target).ok_or(Error::NoIdentity)?;
    Ok(pi.combination(&c))
}

/// Spectral decomposition `a = Σ λ P_λ` of a symmetric matrix with rational
/// spectrum, eigenvalues ascending.
pub fn spectral_projections(a: &Mat) -> Result<Vec<(Rational, Mat)>, Error> {
    if !a.is_symmetric() {
        return Err(Error::Structure(
            "spectral projections need a symmetric matrix".into(),
        ));
    }
    let roots = poly::rational_roots_split(&poly::minimal_polynomial(a))?;
    Ok(lagrange_projectors(a, &roots))
}

fn lagrange_projectors(a: &Mat, roots: &[Rational]) -> Vec<(Rational, Mat)> {
    let n = a.rows();
    let id = Mat::identity(n);
    roots
        .iter()
        .map(|l| {
            let mut p = id.clone();
            for m in roots.iter().filter(|m| *m != l) {
                let f = a
                    .sub(&id.scale_rational(m))
                    .scale_rational(&(l - m).recip().expect("distinct"));
                p = p.mul(&f);
            }
            (l.clone(), p)
        })
        .collect()
}

pub fn check_frame(pi: &Subspace<Rational>, frame: &[Mat]) -> Result<(), Error> {
    if frame.is_empty() {
        return Err(Error::InvalidFrame("empty frame".into()));
    }
    let n = pi.ambient().0;
    let mut sum = Mat::zeros(n, n);
    for (i, e) in frame.iter().enumerate() {
        if e.shape() != (n, n) || !e.is_symmetric() {
            return Err(Error::InvalidFrame(format!(
                "element {i} is not a symmetric {n}x{n} matrix"
            )));
        }
        if e.mul(e) != *e || e.is_zero() {
            return Err(Error::InvalidFrame(format!(
                "element {i} is not a nonzero idempotent"
            )));
        }
        if !pi.contains(e)? {
            return Err(Error::InvalidFrame(format!(
                "element {i} is not in the algebra"
            )));
        }
        for (j, f) in frame.iter().enumerate().skip(i + 1) {
            if !e.mul(f).is_zero() {
                return Err(Error::InvalidFrame(format!(
                    "elements {i} and {j} are not orthogonal"
                )));
            }
        }
        sum.add_assign(e);
    }
    if sum != identity_element(pi)? {
        return Err(Error::InvalidFrame(
            "frame does not sum to the identity".into(),
        ));
    }
    Ok(())
}

/// Dimensions of the Peirce spaces `ℳ^{ρσ}` for a resolution of unity
/// `E_1, …, E_r` of Π.
pub fn peirce_blocks(pi: &Subspace<Rational>, frame: &[Mat]) -> Result<Vec<Vec<usize>>, Error> {
    check_frame(pi, frame)?;
    let r = frame.len();
    let n = pi.ambient().0;
    let basis = pi.basis();
    let mut dims = vec![vec![0; r]; r];
    // The Peirce projection onto ℳ^{ρσ} is A ↦ E_ρ A E_σ + E_σ A E_ρ (halved
    // on the diagonal); its image of Π is exactly ℳ^{ρσ}.
    for rho in 0..r {
        for sigma in rho..r {
            let mut s = Subspace::zero(n, n);
            for b in &basis {
                let m = frame[rho].mul(b).mul(&frame[sigma]);
                s.insert(&m.add(&m.transpose()))?;
            }
            dims[rho][sigma] = s.dim();
            dims[sigma][rho] = s.dim();
        }
    }
    Ok(dims)
}

/// The Peirce space `ℳ^{ρσ}` computed from its defining eigen-conditions
/// `E_τ ∗ A = ½(δ_ρτ + δ_στ) A`. Slower than [`peirce_blocks`]; kept as an
/// independent route for cross-checks.
pub fn peirce_space(
    pi: &Subspace<Rational>,
    frame: &[Mat],
    rho: usize,
    sigma: usize,
) -> Result<Subspace<Rational>, Error> {
    check_frame(pi, frame)?;
    let basis = pi.basis();
    let images: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| {
            frame
                .iter()
                .enumerate()
                .flat_map(|(tau, e)| {
                    let c = Rational::new((rho == tau) as i64 + (sigma == tau) as i64, 2);
                    sym_half(&e.mul(b)).sub(&b.scale_rational(&c)).to_coords()
                })
                .collect()
        })
        .collect();
    let len = images.first().map_or(0, Vec::len);
    let ker = kernel(&images, len);
    let n = pi.ambient().0;
    let mut out = Subspace::zero(n, n);
    for c in ker {
        out.insert(&pi.combination(&c))?;
    }
    Ok(out)
}

/// Elements of `within` that commute with every element of `against` as
/// matrices. A generic combination is applied first to shrink the search
/// space before the individual generators.
pub(crate) fn commuting_subspace(within: &[Mat], against: &[Mat], seed: u64) -> Vec<Mat> {
    let mut current: Vec<Mat> = within.to_vec();
    if current.is_empty() || against.is_empty() {
        return current;
    }
    let mut r = rng::seeded(seed);
    let n = against[0].rows();
    let mut generic = Mat::zeros(n, n);
    for a in against {
        generic.axpy(&rng::nonzero_small(&mut r, 9), a);
    }
    for c in core::iter::once(&generic).chain(against.iter()) {
        if current.is_empty() {
            break;
        }
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
                    m.axpy(ki, si);
                }
                m
            })
            .collect();
    }
    current
}

/// The center of Π: elements commuting with all of Π.
///
/// For a Jordan algebra of symmetric matrices this coincides with the
/// associator-defined center `{z : z∗(a∗b) = (z∗a)∗b}`.
pub fn center(pi: &Subspace<Rational>) -> Subspace<Rational> {
    let basis = pi.basis();
    let n = pi.ambient().0;
    let z = commuting_subspace(&basis, &basis, 0x5eed);
    Subspace::span(n, n, &z).expect("shape")
}

/// The center computed straight from the associator condition, over the
/// basis of Π. Quadratic in `dim Π`; used to validate [`center`].
pub fn center_by_associator(pi: &Subspace<Rational>) -> Subspace<Rational> {
    let basis = pi.basis();
    let n = pi.ambient().0;
    let jp = |a: &Mat, b: &Mat| sym_half(&a.mul(b));
    let mut images: Vec<Vec<Rational>> = vec![Vec::new(); basis.len()];
    for a in &basis {
        for b in &basis {
            let ab = jp(a, b);
            for (k, z) in basis.iter().enumerate() {
                images[k].extend(jp(z, &ab).sub(&jp(&jp(z, a), b)).to_coords());
            }
        }
    }
    let len = images.first().map_or(0, Vec::len);
    let mut out = Subspace::zero(n, n);
    for c in kernel(&images, len) {
        out.insert(&pi.combination(&c)).expect("shape");
    }
    out
}

/// One simple ideal of Π together with the subspace of `ℚⁿ` it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitComponent {
    /// Canonical basis of the carrier `V_α`.
    pub carrier: Echelon,
    /// The central idempotent: orthogonal projector onto the carrier.
    pub idempotent: Mat,
    pub algebra: Subspace<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub null_space: Echelon,
    pub identity: Mat,
    pub components: Vec<SplitComponent>,
}

const SPLIT_ATTEMPTS: u64 = 16;

/// Split a Jordan algebra of symmetric matrices into its null space and
/// simple ideals.
///
/// Fails with [`Error::IrrationalSplitting`] only if a generic central
/// element never separates the central idempotents, which cannot happen for
/// an algebra that is actually closed.
pub fn split_simple(pi: &Subspace<Rational>) -> Result<SplitReport, Error> {
    let (n, _) = pi.ambient();
    let ns = null_space(pi);
    if pi.dim() == 0 {
        return Ok(SplitReport {
            null_space: ns,
            identity: Mat::zeros(n, n),
            components: Vec::new(),
        });
    }
    let unit = identity_element(pi)?;
    let z = center(pi);
    let zb = z.basis();
    let idempotents = if zb.len() <= 1 {
        vec![unit.clone()]
    } else {
        central_idempotents(&zb, &unit, n)?
    };
    let basis = pi.basis();
    let mut components = Vec::with_capacity(idempotents.len());
    for e in idempotents {
        let mut alg = Subspace::zero(n, n);
        for b in &basis {
            alg.insert(&e.mul(b).mul(&e))?;
        }
        let mut carrier = Echelon::new(n);
        for i in 0..n {
            carrier.insert(e.transpose().row(i).to_vec());
        }
        components.push(SplitComponent {
            carrier,
            idempotent: e,
            algebra: alg,
        });
    }
    components.sort_by(|a, b| {
        a.carrier
            .rank()
            .cmp(&b.carrier.rank())
            .then_with(|| a.algebra.canonical_cmp(&b.algebra))
    });
    Ok(SplitReport {
        null_space: ns,
        identity: unit,
        components,
    })
}

fn central_idempotents(zb: &[Mat], unit: &Mat, n: usize) -> Result<Vec<Mat>, Error> {
    let id = Mat::identity(n);
    let null_proj = id.sub(unit);
    for attempt in 0..SPLIT_ATTEMPTS {
        let mut r = rng::seeded(0xce47e5 + attempt);
        let mut g = Mat::zeros(n, n);
        for b in zb {
            g.axpy(&rng::nonzero_small(&mut r, 50), b);
        }
        let roots = match poly::rational_roots_split(&poly::minimal_polynomial(&g)) {
            Ok(r) => r,
            Err(Error::IrrationalSpectrum) => return Err(Error::IrrationalSplitting),
            Err(e) => return Err(e),
        };
        let mut out = Vec::new();
        for (l, p) in lagrange_projectors(&g, &roots) {
            // The projector for eigenvalue 0 also covers the null space.
            let e = if l.is_zero() { p.sub(&null_proj) } else { p };
            if !e.is_zero() {
                out.push(e);
            }
        }
        if out.len() == zb.len() {
            return Ok(out);
        }
    }
    Err(Error::IrrationalSplitting)
}

/// Human-readable summary used in reports.
pub fn describe_violation(v: &ClosureViolation) -> String {
    format!(
        "basis[{}] *_(mults[{}]) basis[{}] is not in the algebra",
        v.x_index, v.a_index, v.y_index
    )
}
