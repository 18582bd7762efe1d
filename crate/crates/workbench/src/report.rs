//! Serializable reports for the analysis commands.

use jordan_core::classify::{ClassificationReport, Classifier, Engine, Fingerprint};
use jordan_core::completion::{chain_check, completion_of, ChainBudget, ChainReport};
use jordan_core::grouprep::{
    class_count_formula, commutant_dim, conjugacy_classes, frobenius_schur, RepType,
};
use jordan_core::jordan::{describe_violation, is_closed, ClosureViolation};
use jordan_core::repforge::{
    dim_d, rh_violation, rho, rho4_product_sign, rho8_product_sign, Variant,
};
use jordan_core::twodim::{check_2d_closure, three_chain_witness, TwoDAlgebra, TwoDCondition};
use jordan_core::{MultialgebraInstance, Rational, Subspace};
use serde::Serialize;

use crate::json::{LabelJson, MatJson, SubspaceJson};
use crate::WbError;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ViolationJson {
    pub x_index: usize,
    pub y_index: usize,
    pub a_index: usize,
    pub product: MatJson,
    pub detail: String,
}

impl ViolationJson {
    pub fn new(v: &ClosureViolation) -> Self {
        ViolationJson {
            x_index: v.x_index,
            y_index: v.y_index,
            a_index: v.a_index,
            product: MatJson::from_real(&v.product),
            detail: describe_violation(v),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessJson {
    pub k_indices: Vec<usize>,
    pub a_indices: Vec<usize>,
    pub value: MatJson,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainJson {
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ChainJson {
    fn new(length: usize, r: Result<ChainReport, jordan_core::Error>) -> Self {
        match r {
            Ok(r) => ChainJson {
                length,
                ok: Some(r.ok),
                witness: r.witness.map(|w| WitnessJson {
                    k_indices: w.k_indices,
                    a_indices: w.a_indices,
                    value: MatJson::from_real(&w.value),
                }),
                error: None,
            },
            Err(e) => ChainJson {
                length,
                ok: None,
                witness: None,
                error: Some(e.to_string()),
            },
        }
    }
}

/// The 3- and 4-chain reports, keyed `"3-chain"` and `"4-chain"`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainsJson {
    #[serde(rename = "3-chain", skip_serializing_if = "Option::is_none")]
    pub three: Option<ChainJson>,
    #[serde(rename = "4-chain", skip_serializing_if = "Option::is_none")]
    pub four: Option<ChainJson>,
}

pub fn chains(inst: &MultialgebraInstance, lengths: &[usize]) -> ChainsJson {
    let run = |len: usize| {
        lengths
            .contains(&len)
            .then(|| ChainJson::new(len, chain_check(inst, len, ChainBudget::default())))
    };
    ChainsJson {
        three: run(3),
        four: run(4),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FingerprintJson {
    pub ambient_n: usize,
    pub alg_dim: usize,
    pub envelope_dim: usize,
    pub envelope_sym_dim: usize,
    pub commutant_dim: usize,
}

impl From<Fingerprint> for FingerprintJson {
    fn from(f: Fingerprint) -> Self {
        FingerprintJson {
            ambient_n: f.ambient_n,
            alg_dim: f.alg_dim,
            envelope_dim: f.envelope_dim,
            envelope_sym_dim: f.envelope_sym_dim,
            commutant_dim: f.commutant_dim,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedLabel {
    pub name: String,
    #[serde(flatten)]
    pub label: LabelJson,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentJson {
    pub carrier_dim: usize,
    pub alg_dim: usize,
    pub fingerprint: FingerprintJson,
    pub labels: Vec<NamedLabel>,
    pub ambiguous: bool,
    pub complete_by_criterion: Option<bool>,
    pub complete_direct: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationJson {
    pub ambient_n: usize,
    pub null_dim: usize,
    pub complete: bool,
    pub shortcut_consistent: bool,
    pub components: Vec<ComponentJson>,
}

impl From<&ClassificationReport> for ClassificationJson {
    fn from(r: &ClassificationReport) -> Self {
        ClassificationJson {
            ambient_n: r.ambient_n,
            null_dim: r.null_dim,
            complete: r.complete,
            shortcut_consistent: r.shortcut_consistent,
            components: r
                .components
                .iter()
                .map(|c| ComponentJson {
                    carrier_dim: c.carrier_dim,
                    alg_dim: c.alg_dim,
                    fingerprint: c.fingerprint.into(),
                    labels: c
                        .labels
                        .iter()
                        .map(|l| NamedLabel {
                            name: l.to_string(),
                            label: LabelJson::from_label(l),
                        })
                        .collect(),
                    ambiguous: c.labels.len() > 1,
                    complete_by_criterion: c.complete_by_criterion,
                    complete_direct: c.complete_direct,
                })
                .collect(),
        }
    }
}

pub fn classify(pi: &Subspace<Rational>, engine: Engine) -> Result<ClassificationJson, WbError> {
    Ok((&Classifier::new(engine).classify(pi)?).into())
}

/// Native checks on a two-dimensional pair, reported next to the realified
/// analysis.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoDJson {
    pub n: usize,
    pub dims: [usize; 2],
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(rename = "3-chain")]
    pub three_chain: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_chain_witness: Option<MatJson>,
}

pub fn twod(alg: &TwoDAlgebra) -> TwoDJson {
    let closure = check_2d_closure(alg);
    let witness = three_chain_witness(alg.l());
    let (l, m) = alg.dims();
    TwoDJson {
        n: alg.n(),
        dims: [l, m],
        closed: closure.is_ok(),
        violation: closure.err().map(|v| {
            match v.condition {
                TwoDCondition::SquareInM => "Y^2 + XX^T leaves M",
                TwoDCondition::MixedInL => "YX + XY* leaves L",
            }
            .to_string()
        }),
        three_chain: witness.is_none(),
        three_chain_witness: witness.map(|w| MatJson::from_complex(&w.value)),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzeJson {
    pub ambient_n: usize,
    pub dim: usize,
    pub mults_dim: usize,
    pub classical: bool,
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion: Option<SubspaceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chains: Option<ChainsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_d: Option<TwoDJson>,
}

/// Closure, completion, chains and (for classical instances) classification.
pub fn analyze(inst: &MultialgebraInstance) -> AnalyzeJson {
    let classical = inst.is_classical();
    let mut out = AnalyzeJson {
        ambient_n: inst.n(),
        dim: inst.pi.dim(),
        mults_dim: inst.mults.dim(),
        classical,
        closed: true,
        violation: None,
        completion_dim: None,
        complete: None,
        completion: None,
        chains: None,
        classification: None,
        classification_error: None,
        two_d: None,
    };
    if let Err(v) = is_closed(inst) {
        out.closed = false;
        out.violation = Some(ViolationJson::new(&v));
        return out;
    }
    let completion = completion_of(inst);
    out.completion_dim = Some(completion.dim());
    out.complete = Some(completion == inst.pi);
    if completion != inst.pi {
        out.completion = Some(SubspaceJson::from_real(&completion));
    }
    out.chains = Some(chains(inst, &[3, 4]));
    if classical {
        match classify(&inst.pi, Engine::default()) {
            Ok(c) => out.classification = Some(c),
            Err(e) => out.classification_error = Some(e.to_string()),
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RelationsJson {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EckmannJson {
    pub p: usize,
    pub variant: String,
    pub d: usize,
    pub relations: RelationsJson,
    /// `±1` from `ρ(a₁a₂) = ±ρ(a₃)` (p = 4) or `ρ(a₂⋯a₇) = ±ρ(a₁)` (p = 8).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_sign: Option<i32>,
    pub classes: usize,
    pub class_count_formula: usize,
    /// An integer in practice; written as a string otherwise.
    pub fs: serde_json::Value,
    pub commutant_dim: usize,
    #[serde(rename = "type")]
    pub rep_type: String,
    pub consistent: bool,
}

pub const ECKMANN_MAX_P: usize = 12;

pub fn eckmann(p: usize, variant: Variant) -> Result<EckmannJson, WbError> {
    if !(2..=ECKMANN_MAX_P).contains(&p) {
        return Err(WbError::Usage(format!(
            "p must be in 2..={ECKMANN_MAX_P}, got {p}"
        )));
    }
    variant.check(p)?;
    let ys = rho(p, variant)?;
    let violation = rh_violation(&ys);
    let product_sign = match p {
        4 => rho4_product_sign(&ys),
        8 => rho8_product_sign(&ys),
        _ => None,
    };
    let classes = conjugacy_classes(p)?.len();
    let fs = frobenius_schur(p, variant)?;
    let rep_type = RepType::from_indicator(&fs)
        .ok_or_else(|| WbError::Parse(format!("indicator {fs} is not -1, 0 or 1")))?;
    let commutant = commutant_dim(p, variant)?;
    let consistent = violation.is_none()
        && classes == class_count_formula(p)
        && commutant == rep_type.commutant_dim();
    Ok(EckmannJson {
        p,
        variant: variant.name().to_string(),
        d: dim_d(p)?,
        relations: RelationsJson {
            ok: violation.is_none(),
            detail: violation,
        },
        product_sign,
        classes,
        class_count_formula: class_count_formula(p),
        fs: exact_number(&fs),
        commutant_dim: commutant,
        rep_type: rep_type.name().to_string(),
        consistent,
    })
}

fn exact_number(q: &Rational) -> serde_json::Value {
    match (q.is_integer(), i64::try_from(q.numer())) {
        (true, Ok(v)) => v.into(),
        _ => q.to_literal().into(),
    }
}
