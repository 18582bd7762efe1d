//! The catalog of simple non-singular Jordan subalgebras of `Sym(ℝⁿ)`, one
//! canonical representative per label.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::radon_hurwitz::dim_d;
use super::spin::{
    classical_frame, classical_irrep, spin_factor, spin_frame, swap_off_diagonal, ClassicalKind,
};
use crate::exactla::{Mat, Rational, Subspace};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    /// `I_k ⊗ Sym(ℝʳ)`
    A,
    /// `I_k ⊗ 𝔥(ℂʳ)`
    B,
    /// `I_k ⊗ 𝔥(ℍʳ)`
    C,
    /// `I_k ⊗ Π_𝔖N`
    D,
    /// `diag(I_{s1} ⊗ A, I_{s2} ⊗ TA)`, `A ∈ Π_𝔖N`
    E,
}

impl Form {
    pub fn letter(self) -> char {
        match self {
            Form::A => 'a',
            Form::B => 'b',
            Form::C => 'c',
            Form::D => 'd',
            Form::E => 'e',
        }
    }

    pub fn from_letter(c: &str) -> Result<Form, Error> {
        match c {
            "a" => Ok(Form::A),
            "b" => Ok(Form::B),
            "c" => Ok(Form::C),
            "d" => Ok(Form::D),
            "e" => Ok(Form::E),
            _ => Err(Error::InvalidLabel(format!("unknown form {c:?}"))),
        }
    }

    fn classical_kind(self) -> Option<ClassicalKind> {
        match self {
            Form::A => Some(ClassicalKind::SymR),
            Form::B => Some(ClassicalKind::HermC),
            Form::C => Some(ClassicalKind::HermH),
            _ => None,
        }
    }
}

/// A catalog entry. Unused parameters are zero: `r` only for forms a–c,
/// `n_spin` only for d–e, `multiplicity` for a–d, `s1`/`s2` for e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalogLabel {
    pub form: Form,
    pub r: usize,
    pub n_spin: usize,
    pub multiplicity: usize,
    pub s1: usize,
    pub s2: usize,
}

impl CatalogLabel {
    pub fn classical(form: Form, r: usize, multiplicity: usize) -> Self {
        CatalogLabel {
            form,
            r,
            n_spin: 0,
            multiplicity,
            s1: 0,
            s2: 0,
        }
    }

    pub fn spin(n_spin: usize, multiplicity: usize) -> Self {
        CatalogLabel {
            form: Form::D,
            r: 0,
            n_spin,
            multiplicity,
            s1: 0,
            s2: 0,
        }
    }

    pub fn twisted(n_spin: usize, s1: usize, s2: usize) -> Self {
        CatalogLabel {
            form: Form::E,
            r: 0,
            n_spin,
            multiplicity: 0,
            s1,
            s2,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidLabel(msg));
        match self.form {
            Form::A | Form::B | Form::C => {
                let min_r = if self.form == Form::A { 1 } else { 2 };
                if self.r < min_r {
                    return bad(format!("form {} needs r >= {min_r}", self.form.letter()));
                }
                if self.multiplicity == 0 {
                    return bad("multiplicity must be positive".into());
                }
                if self.n_spin != 0 || self.s1 != 0 || self.s2 != 0 {
                    return bad(format!(
                        "form {} takes only r and multiplicity",
                        self.form.letter()
                    ));
                }
            }
            Form::D => {
                if self.n_spin < 5 || self.n_spin == 6 {
                    return bad(format!(
                        "form d needs N in {{5, 7, 8, 9, ...}}, got {}",
                        self.n_spin
                    ));
                }
                if self.multiplicity == 0 {
                    return bad("multiplicity must be positive".into());
                }
                if self.r != 0 || self.s1 != 0 || self.s2 != 0 {
                    return bad("form d takes only N and multiplicity".into());
                }
            }
            Form::E => {
                if self.n_spin < 6 || self.n_spin % 4 != 2 {
                    return bad(format!(
                        "form e needs N = 2 mod 4 and N >= 6, got {}",
                        self.n_spin
                    ));
                }
                if self.s1 == 0 || self.s2 == 0 {
                    return bad("form e needs s1 > 0 and s2 > 0".into());
                }
                if self.r != 0 || self.multiplicity != 0 {
                    return bad("form e takes only N, s1 and s2".into());
                }
            }
        }
        Ok(())
    }

    /// Form e with `(s1, s2)` and `(s2, s1)` are orthogonally equivalent;
    /// the canonical label has `s1 <= s2`.
    pub fn canonical(&self) -> Self {
        let mut l = *self;
        if l.form == Form::E && l.s1 > l.s2 {
            core::mem::swap(&mut l.s1, &mut l.s2);
        }
        l
    }

    /// Number of copies of the irreducible block.
    pub fn copies(&self) -> usize {
        match self.form {
            Form::E => self.s1 + self.s2,
            _ => self.multiplicity,
        }
    }

    /// Size of the irreducible block.
    pub fn block_size(&self) -> usize {
        match self.form.classical_kind() {
            Some(k) => k.block() * self.r,
            None => 2 * dim_d(self.n_spin - 2).expect("validated"),
        }
    }

    pub fn ambient_n(&self) -> usize {
        self.copies() * self.block_size()
    }

    pub fn alg_dim(&self) -> usize {
        match self.form {
            Form::A => self.r * (self.r + 1) / 2,
            Form::B => self.r * self.r,
            Form::C => self.r * (2 * self.r - 1),
            Form::D | Form::E => self.n_spin,
        }
    }

    /// Completeness as predicted by the structure theorem: forms a, b, c are
    /// complete and d, e are not.
    pub fn complete_by_criterion(&self) -> bool {
        matches!(self.form, Form::A | Form::B | Form::C)
    }

    /// `(r, p)`: the size of a resolution of unity by unresolvable
    /// idempotents and the common off-diagonal Peirce dimension.
    pub fn peirce_invariants(&self) -> (usize, usize) {
        match self.form.classical_kind() {
            Some(_) if self.r == 1 => (1, 0),
            Some(k) => (self.r, k.peirce()),
            None => (2, self.n_spin - 2),
        }
    }
}

impl fmt::Display for CatalogLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            Form::A | Form::B | Form::C => write!(
                f,
                "{}(r={}, k={})",
                self.form.letter(),
                self.r,
                self.multiplicity
            ),
            Form::D => write!(f, "d(N={}, k={})", self.n_spin, self.multiplicity),
            Form::E => write!(f, "e(N={}, s1={}, s2={})", self.n_spin, self.s1, self.s2),
        }
    }
}

fn irreducible_block(label: &CatalogLabel) -> Result<Subspace<Rational>, Error> {
    match label.form.classical_kind() {
        Some(k) => classical_irrep(k, label.r),
        None => spin_factor(label.n_spin),
    }
}

/// Build the canonical representative of a label.
pub fn catalog_build(label: &CatalogLabel) -> Result<Subspace<Rational>, Error> {
    label.validate()?;
    let block = irreducible_block(label)?;
    if label.form != Form::E {
        return Ok(block.with_multiplicity(label.multiplicity));
    }
    let n = label.ambient_n();
    let d = label.block_size() / 2;
    let (i1, i2) = (Mat::identity(label.s1), Mat::identity(label.s2));
    let mut s = Subspace::zero(n, n);
    for a in block.basis() {
        let ta = swap_off_diagonal(&a, d);
        s.insert(&Mat::block_diag(&[i1.kron(&a), i2.kron(&ta)]))?;
    }
    Ok(s)
}

/// A resolution of unity by unresolvable idempotents in the canonical
/// representative: `I_k ⊗ E_αα` blocks, or the two spin block projectors.
pub fn native_frame(label: &CatalogLabel) -> Result<Vec<Mat>, Error> {
    label.validate()?;
    let base = match label.form.classical_kind() {
        Some(k) => classical_frame(k, label.r),
        None => spin_frame(label.n_spin)?,
    };
    Ok(match label.form {
        // T fixes the diagonal projectors.
        Form::E => {
            let (i1, i2) = (Mat::identity(label.s1), Mat::identity(label.s2));
            base.iter()
                .map(|e| Mat::block_diag(&[i1.kron(e), i2.kron(e)]))
                .collect()
        }
        _ => {
            let id = Mat::identity(label.multiplicity);
            base.iter().map(|e| id.kron(e)).collect()
        }
    })
}

/// Every canonical label whose ambient size is at most `max_ambient`.
pub fn enumerate_catalog(max_ambient: usize) -> Vec<CatalogLabel> {
    let mut out = Vec::new();
    for (form, block, min_r) in [(Form::A, 1, 1), (Form::B, 2, 2), (Form::C, 4, 2)] {
        let mut r = min_r;
        while block * r <= max_ambient {
            for k in 1..=max_ambient / (block * r) {
                out.push(CatalogLabel::classical(form, r, k));
            }
            r += 1;
        }
    }
    let mut n_spin = 5;
    loop {
        let size = 2 * dim_d(n_spin - 2).expect("n_spin >= 5");
        if size > max_ambient {
            break;
        }
        if n_spin != 6 {
            for k in 1..=max_ambient / size {
                out.push(CatalogLabel::spin(n_spin, k));
            }
        }
        if n_spin % 4 == 2 {
            let copies = max_ambient / size;
            for s1 in 1..copies {
                for s2 in s1..=copies - s1 {
                    out.push(CatalogLabel::twisted(n_spin, s1, s2));
                }
            }
        }
        n_spin += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_up_to_sixteen() {
        let all = enumerate_catalog(16);
        assert_eq!(all.len(), 73);
        for l in &all {
            l.validate().unwrap();
            assert!(l.ambient_n() <= 16);
            assert_eq!(*l, l.canonical());
        }
        assert!(all.contains(&CatalogLabel::twisted(6, 1, 1)));
        assert!(all.contains(&CatalogLabel::spin(10, 1)));
        assert!(!all.iter().any(|l| l.form == Form::D && l.n_spin == 6));
    }

    #[test]
    fn build_examples() {
        let a = catalog_build(&CatalogLabel::classical(Form::A, 2, 2)).unwrap();
        assert_eq!(a, Subspace::sym(2).with_multiplicity(2));
        let e = catalog_build(&CatalogLabel::twisted(6, 1, 1)).unwrap();
        assert_eq!((e.ambient().0, e.dim()), (16, 6));
        let d = catalog_build(&CatalogLabel::spin(5, 1)).unwrap();
        assert_eq!(d, spin_factor(5).unwrap());
        assert_eq!(
            catalog_build(&CatalogLabel::classical(Form::A, 1, 1)).unwrap(),
            Subspace::scalars(1)
        );
    }

    #[test]
    fn invalid_labels() {
        for l in [
            CatalogLabel::classical(Form::B, 1, 1),
            CatalogLabel::classical(Form::A, 2, 0),
            CatalogLabel::spin(6, 1),
            CatalogLabel::spin(4, 1),
            CatalogLabel::twisted(6, 0, 1),
            CatalogLabel::twisted(8, 1, 1),
        ] {
            assert!(
                matches!(catalog_build(&l), Err(Error::InvalidLabel(_))),
                "{l}"
            );
        }
    }
}
