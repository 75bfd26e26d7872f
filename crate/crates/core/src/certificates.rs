//! Chains the local-group, enumeration and rewriting results into verdicts:
//! irreducibility, the normal subgroup theorem's hypotheses, a simplicity
//! certificate for `<<w>>`, and the ranks of the two amalgam splittings of
//! the index-4 subgroup.

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::complex::{Letter, Side, SquareComplex};
use crate::corpus;
use crate::coset::{enumerate, quotient_structure, EnumError, EnumOptions};
use crate::fp::{index4_hom, presentation_from_complex, Word};
use crate::group::{factorial, nonabelian_simplicity, recognize, Recognition, DEFAULT_SIMPLICITY_BOUND};
use crate::local::{local_group, LocalError};
use crate::rs::parity_kernel_table;

pub const NST_CONCLUSION: &str = "any non-trivial normal subgroup of Γ has finite index";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    CriterionInapplicable,
    /// A resource cap was hit.
    Unknown,
    Skipped,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Step {
    pub name: String,
    pub verdict: Verdict,
    pub values: serde_json::Value,
    pub citation: String,
}

#[derive(Debug, Error)]
pub enum CertError {
    #[error(transparent)]
    Local(#[from] LocalError),
}

fn big(n: &BigUint) -> serde_json::Value {
    serde_json::Value::String(n.to_string())
}

#[derive(Clone, Debug)]
pub struct Irreducibility {
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub vertical_recognized: Option<Recognition>,
    pub order: Option<BigUint>,
    pub target: Option<BigUint>,
}

impl Irreducibility {
    pub fn step(&self) -> Step {
        Step {
            name: "irreducibility".into(),
            verdict: self.verdict,
            values: json!({
                "reason": self.reason,
                "p_v1": self.vertical_recognized.as_ref().map(|r| r.to_string()),
                "p_v2_order": self.order.as_ref().map(big),
                "target": self.target.as_ref().map(big),
            }),
            citation: "Burger–Mozes local criterion: |P_v^(2)| = |A_2n| · |A_2n-1|^2n".into(),
        }
    }
}

/// `|A_{2n}| * |A_{2n-1}|^{2n}`.
pub fn irreducibility_target(n: u32) -> BigUint {
    let d = 2 * n as usize;
    (factorial(d) / 2u32) * (factorial(d - 1) / 2u32).pow(d as u32)
}

pub fn irreducibility_check(c: &SquareComplex) -> Result<Irreducibility, CertError> {
    let inapplicable = |reason: String, rec: Option<Recognition>| Irreducibility {
        verdict: Verdict::CriterionInapplicable,
        reason: Some(reason),
        vertical_recognized: rec,
        order: None,
        target: None,
    };
    if !c.check_link().ok {
        return Ok(inapplicable("link condition fails".into(), None));
    }
    let n = c.n();
    if n < 3 {
        return Ok(inapplicable(format!("n = {n} < 3"), None));
    }
    let v1 = local_group(c, Side::Vertical, 1)?;
    let rec = recognize(&v1.group);
    if rec != (Recognition::Alt { degree: 2 * n as usize }) || v1.group.degree() != 2 * n as usize {
        return Ok(inapplicable(format!("P_v^(1) is {rec}, not A{}", 2 * n), Some(rec)));
    }
    let order = local_group(c, Side::Vertical, 2)?.order();
    let target = irreducibility_target(n);
    Ok(Irreducibility {
        verdict: if order == target { Verdict::Pass } else { Verdict::Fail },
        reason: None,
        vertical_recognized: Some(rec),
        order: Some(order),
        target: Some(target),
    })
}

/// One side's share of the normal subgroup theorem's local hypotheses.
#[derive(Clone, Debug, Serialize)]
pub struct LocalHypotheses {
    pub side: Side,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub order: BigUint,
    pub recognized: String,
    pub two_transitive: bool,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub stabilizer_order: BigUint,
    pub stabilizer_recognized: String,
    pub stabilizer_simple: bool,
}

impl LocalHypotheses {
    fn compute(c: &SquareComplex, side: Side, bound: u64) -> Result<Self, CertError> {
        let g = local_group(c, side, 1)?.group;
        let two_transitive = g.is_k_transitive(2);
        let stab = g.point_stabilizer(0);
        let verdict = nonabelian_simplicity(&stab, bound);
        Ok(LocalHypotheses {
            side,
            order: g.order(),
            recognized: recognize(&g).to_string(),
            two_transitive,
            stabilizer_order: stab.order(),
            stabilizer_recognized: recognize(&stab).to_string(),
            stabilizer_simple: verdict.is_simple(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct NstCheck {
    pub verdict: Verdict,
    /// First hypothesis that failed.
    pub failed_at: Option<String>,
    pub horizontal: LocalHypotheses,
    pub vertical: LocalHypotheses,
    pub irreducibility: Option<Irreducibility>,
}

impl NstCheck {
    pub fn conclusion(&self) -> Option<&'static str> {
        self.verdict.is_pass().then_some(NST_CONCLUSION)
    }

    pub fn step(&self) -> Step {
        Step {
            name: "normal_subgroup_theorem".into(),
            verdict: self.verdict,
            values: json!({
                "failed_at": self.failed_at,
                "horizontal": self.horizontal,
                "vertical": self.vertical,
                "irreducibility": self.irreducibility.as_ref().map(|i| i.step().values),
                "conclusion": self.conclusion(),
            }),
            citation: "Burger–Mozes normal subgroup theorem".into(),
        }
    }
}

/// Local 2-transitivity first, then simplicity of the point stabilizers,
/// then irreducibility.
pub fn nst_check(c: &SquareComplex, bound: u64) -> Result<NstCheck, CertError> {
    let horizontal = LocalHypotheses::compute(c, Side::Horizontal, bound)?;
    let vertical = LocalHypotheses::compute(c, Side::Vertical, bound)?;
    let mut out = NstCheck {
        verdict: Verdict::Fail,
        failed_at: None,
        horizontal,
        vertical,
        irreducibility: None,
    };
    if !(out.horizontal.two_transitive && out.vertical.two_transitive) {
        out.failed_at = Some("2-transitivity".into());
        return Ok(out);
    }
    if !(out.horizontal.stabilizer_simple && out.vertical.stabilizer_simple) {
        out.failed_at = Some("stabilizer simplicity".into());
        return Ok(out);
    }
    let irr = irreducibility_check(c)?;
    out.verdict = irr.verdict;
    if !irr.verdict.is_pass() {
        out.failed_at = Some("irreducibility".into());
    }
    out.irreducibility = Some(irr);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assumption {
    pub statement: String,
    pub citation: String,
    pub acknowledged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub complex: String,
    pub steps: Vec<Step>,
    pub assumptions: Vec<Assumption>,
    pub conclusion: String,
    #[serde(skip)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `<<w>>` is simple of the given index.
    Simple { index: usize, gamma0: bool },
    /// Every check passed, but the assumption was not acknowledged.
    Partial,
    /// Only the normal subgroup theorem's conclusion holds.
    NstOnly,
    Aborted { step: String, verdict: Verdict },
}

impl Certificate {
    pub fn is_simple(&self) -> bool {
        matches!(self.outcome, Outcome::Simple { .. })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CertOptions {
    pub assume_nrf: bool,
    pub enumeration: EnumOptions,
    pub simplicity_bound: u64,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions {
            assume_nrf: false,
            enumeration: EnumOptions::default(),
            simplicity_bound: DEFAULT_SIMPLICITY_BOUND,
        }
    }
}

/// `Δ`'s generators, located in `c` by name.
fn delta_letters(c: &SquareComplex, delta: &SquareComplex) -> Option<(Vec<Letter>, Vec<Letter>)> {
    let find = |names: &[String], wanted: &[String], side: Side| -> Option<Vec<Letter>> {
        let mut out = Vec::new();
        for w in wanted {
            let i = names.iter().position(|n| n == w)? as u32 + 1;
            out.push(Letter::new(side, i, false));
            out.push(Letter::new(side, i, true));
        }
        Some(out)
    };
    Some((
        find(&c.horizontal_names, &delta.horizontal_names, Side::Horizontal)?,
        find(&c.vertical_names, &delta.vertical_names, Side::Vertical)?,
    ))
}

fn abort(name: &str, steps: Vec<Step>, assumptions: Vec<Assumption>, c: &SquareComplex) -> Certificate {
    let verdict = steps.last().map(|s| s.verdict).unwrap_or(Verdict::Fail);
    Certificate {
        complex: c.name.clone(),
        steps,
        assumptions,
        conclusion: format!("no conclusion: step `{name}` did not pass"),
        outcome: Outcome::Aborted {
            step: name.into(),
            verdict,
        },
    }
}

/// Runs the chain: link condition, embedding of `Δ`, normal subgroup
/// theorem, index of `<<w>>`, and the parity identification. Simplicity is
/// concluded only when `assume_nrf` acknowledges `w ∈ Δ*`.
pub fn simplicity_certificate(
    c: &SquareComplex,
    w: &Word,
    opts: CertOptions,
) -> Result<Certificate, CertError> {
    let p = presentation_from_complex(c);
    let wtext = p.word_text(w);
    let assumptions = vec![Assumption {
        statement: format!("w = {wtext} lies in Δ*, the finite residual of Δ"),
        citation: if wtext == corpus::DELTA_RESIDUAL_WORD {
            "Wise, non-residually-finite square complex Δ".into()
        } else {
            "unverified, supplied by caller".into()
        },
        acknowledged: opts.assume_nrf,
    }];
    let mut steps = Vec::new();

    let link = c.check_link();
    steps.push(Step {
        name: "link_condition".into(),
        verdict: if link.ok { Verdict::Pass } else { Verdict::Fail },
        values: json!({
            "covered": link.covered,
            "expected": link.expected,
            "missing": link.missing_corners.len(),
            "duplicates": link.duplicate_corners.len(),
        }),
        citation: "link condition: the link is complete bipartite K_2m,2n".into(),
    });
    if !link.ok {
        return Ok(abort("link_condition", steps, assumptions, c));
    }

    let delta = corpus::delta();
    let embedded = delta_letters(c, &delta).and_then(|(h, v)| c.check_subcomplex(&h, &v).ok());
    let embedding_ok = embedded
        .as_ref()
        .is_some_and(|e| e.ok && e.sub.squares == delta.squares);
    steps.push(Step {
        name: "delta_embedding".into(),
        verdict: if embedding_ok { Verdict::Pass } else { Verdict::Fail },
        values: json!({
            "generators": delta.horizontal_names.iter().chain(&delta.vertical_names).collect::<Vec<_>>(),
            "squares_found": embedded.as_ref().map(|e| e.sub.squares.len()),
            "squares_expected": delta.squares.len(),
        }),
        citation: "full subcomplex inclusion is π1-injective, so Δ* ≤ Γ*".into(),
    });

    let nst = nst_check(c, opts.simplicity_bound)?;
    steps.push(nst.step());
    if !nst.verdict.is_pass() {
        return Ok(abort("normal_subgroup_theorem", steps, assumptions, c));
    }
    if !embedding_ok {
        steps.push(skipped("normal_closure_index"));
        steps.push(skipped("gamma0_identification"));
        return Ok(Certificate {
            complex: c.name.clone(),
            steps,
            assumptions,
            conclusion: NST_CONCLUSION.into(),
            outcome: Outcome::NstOnly,
        });
    }

    let closure = enumerate(&p.with_relator(w.clone()), &[], opts.enumeration);
    let table = match closure {
        Ok(t) => t,
        Err(e) => {
            steps.push(Step {
                name: "normal_closure_index".into(),
                verdict: Verdict::Unknown,
                values: json!({ "word": wtext, "error": e.to_string(), "cap": cap_of(&e) }),
                citation: ENUM_CITATION.into(),
            });
            return Ok(abort("normal_closure_index", steps, assumptions, c));
        }
    };
    let k = table.index();
    steps.push(Step {
        name: "normal_closure_index".into(),
        verdict: Verdict::Pass,
        values: json!({
            "word": wtext,
            "index": k,
            "strategy": table.stats.strategy,
            "max_live": table.stats.max_live,
            "total_defined": table.stats.total_defined,
        }),
        citation: ENUM_CITATION.into(),
    });

    let hom = index4_hom(&p).expect("relators of a VH complex have even parity");
    let image = hom.image(w);
    let gamma0_index = parity_kernel_table(&hom).index();
    let quotient = quotient_structure(&table).expect("normal closure gives a normal subgroup");
    let invariants = quotient.invariants.as_ref().map(|i| i.torsion_u64());
    let identified = hom.in_kernel(w)
        && k == 4
        && gamma0_index == 4
        && quotient.order == 4
        && invariants.as_deref() == Some(&[2, 2][..]);
    steps.push(Step {
        name: "gamma0_identification".into(),
        verdict: if identified {
            Verdict::Pass
        } else {
            Verdict::CriterionInapplicable
        },
        values: json!({
            "parity_image": [image.0, image.1],
            "in_kernel": hom.in_kernel(w),
            "closure_index": k,
            "quotient_order": quotient.order,
            "quotient_invariants": invariants,
            "gamma0_index": gamma0_index,
        }),
        citation: "parity homomorphism Γ -> Z/2 x Z/2 with kernel Γ₀".into(),
    });

    if !opts.assume_nrf {
        return Ok(Certificate {
            complex: c.name.clone(),
            steps,
            assumptions,
            conclusion: format!("{NST_CONCLUSION}; ⟨⟨w⟩⟩ has index {k}; simplicity not concluded without the Δ* assumption"),
            outcome: Outcome::Partial,
        });
    }
    let conclusion = if identified {
        "Γ* = ⟨⟨w⟩⟩ = Γ₀, finitely presented torsion-free simple, index 4".to_string()
    } else {
        format!("Γ* = ⟨⟨w⟩⟩, finitely presented torsion-free simple, index {k}")
    };
    Ok(Certificate {
        complex: c.name.clone(),
        steps,
        assumptions,
        conclusion,
        outcome: Outcome::Simple {
            index: k,
            gamma0: identified,
        },
    })
}

const ENUM_CITATION: &str = "Todd–Coxeter coset enumeration of Γ / ⟨⟨w⟩⟩";

fn cap_of(e: &EnumError) -> Option<usize> {
    match e {
        EnumError::Exhausted { cap } => Some(*cap),
        EnumError::ZeroCap => None,
    }
}

fn skipped(name: &str) -> Step {
    Step {
        name: name.into(),
        verdict: Verdict::Skipped,
        values: json!({}),
        citation: String::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Amalgam {
    pub vertex_rank: u64,
    pub edge_rank: u64,
    pub edge_index: u64,
}

impl Amalgam {
    /// `2 chi(F_vertex) - chi(F_edge)`.
    pub fn euler_characteristic(&self) -> i64 {
        2 * (1 - self.vertex_rank as i64) - (1 - self.edge_rank as i64)
    }

    /// Rendered as `F_7 * F_73 F_7`, the edge group as subscript.
    pub fn notation(&self) -> String {
        format!("F_{v} *_F_{e} F_{v}", v = self.vertex_rank, e = self.edge_rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AmalgamRanks {
    pub horizontal_cut: Amalgam,
    pub vertical_cut: Amalgam,
    pub euler_characteristic: i64,
    pub euler_consistent: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("m and n must be at least 1")]
pub struct AmalgamError;

/// Ranks of the two splittings of the index-4 subgroup, one per tree factor.
pub fn amalgam_ranks(m: u64, n: u64) -> Result<AmalgamRanks, AmalgamError> {
    if m == 0 || n == 0 {
        return Err(AmalgamError);
    }
    let horizontal_cut = Amalgam {
        vertex_rank: 2 * n - 1,
        edge_rank: (2 * n - 2) * 2 * m + 1,
        edge_index: 2 * m,
    };
    let vertical_cut = Amalgam {
        vertex_rank: 2 * m - 1,
        edge_rank: (2 * m - 2) * 2 * n + 1,
        edge_index: 2 * n,
    };
    let (mi, ni) = (m as i64, n as i64);
    let chi = 4 * (1 - (mi + ni) + mi * ni);
    Ok(AmalgamRanks {
        horizontal_cut,
        vertical_cut,
        euler_characteristic: chi,
        euler_consistent: horizontal_cut.euler_characteristic() == chi
            && vertical_cut.euler_characteristic() == chi,
    })
}
