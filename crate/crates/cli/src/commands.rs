use std::path::Path;

use autgate::analysis::{printed_generator_fidelity, rm_block_check, rm_css, structure_report};
use autgate::aut::{automorphism_group_with, brute_force_aut, intersect_aut_with, SearchOptions, DEFAULT_NODE_BUDGET};
use autgate::claims::{self, ClaimCheck, ClaimStatus};
use autgate::codes::{CssCode, LinearCode, MAX_ENUMERATION_DIM};
use autgate::logical::{fourier_report, induced_action, phase_action, verify_coset_action};
use autgate::poly::{cyclotomic_cosets, factor_cyclic};
use autgate::stabilizer::{agl18_labeling, load_stabilizer, stab_aut_group_with, stab_symplectic_rep};
use autgate::synthesis::{synthesize, verify_word, AutData, InstructionWord, WordDocument};
use autgate::{BitMatrix, BitVector, LogicalMatrix, MatrixGroup, PermGroup, Permutation};
use serde_json::{json, Value};

use crate::report::InputDigest;
use crate::{Cli, CliError, Command, Family};

type Result<T> = std::result::Result<T, CliError>;

pub(crate) struct CommandOutput {
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    pub claims: Vec<ClaimCheck>,
    pub notes: Vec<String>,
    /// Set when a value requested on the command line was not met.
    pub mismatch: bool,
}

impl CommandOutput {
    fn new(inputs: Vec<InputDigest>, results: Value) -> Self {
        CommandOutput { inputs, results, claims: Vec::new(), notes: Vec::new(), mismatch: false }
    }

    pub fn failed(&self) -> bool {
        self.mismatch || self.claims.iter().any(|c| c.status == ClaimStatus::Mismatch)
    }
}

struct Inputs(Vec<InputDigest>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        self.0.push(InputDigest::new(path, &bytes));
        String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("{}: not UTF-8 text: {e}", path.display())))
    }

    fn parse<T>(&mut self, path: &Path, f: impl FnOnce(&str) -> autgate::Result<T>) -> Result<T> {
        let text = self.read(path)?;
        f(&text).map_err(|source| CliError::Input { path: path.display().to_string(), source })
    }

    fn code(&mut self, path: &Path) -> Result<LinearCode> {
        self.parse(path, LinearCode::parse)
    }

    fn css(&mut self, outer: &Path, inner: &Path) -> Result<CssCode> {
        let c1 = self.code(outer)?;
        let c2 = self.code(inner)?;
        Ok(CssCode::from_pair(c1, c2)?)
    }

    fn matrix(&mut self, path: &Path) -> Result<BitMatrix> {
        self.parse(path, BitMatrix::parse)
    }
}

fn search_options(cli: &Cli) -> SearchOptions {
    SearchOptions { node_budget: cli.global.node_budget.unwrap_or(DEFAULT_NODE_BUDGET) }
}

fn rows(m: &BitMatrix) -> Value {
    json!(m.rows().iter().map(BitVector::to_string).collect::<Vec<_>>())
}

fn generators(g: &PermGroup) -> Value {
    json!(g.generators().iter().map(Permutation::one_based).collect::<Vec<_>>())
}

fn requested(id: &str, claim: &str, expected: &str, computed: String) -> ClaimCheck {
    let status = if computed == expected { ClaimStatus::Match } else { ClaimStatus::Mismatch };
    ClaimCheck { id: id.into(), claim: claim.into(), expected: expected.into(), computed, status }
}

pub(crate) fn dispatch(cli: &Cli) -> Result<CommandOutput> {
    let mut inputs = Inputs(Vec::new());
    let opts = search_options(cli);
    match &cli.command {
        Command::Info { codefile } => {
            let code = inputs.code(codefile)?;
            let small = code.k() <= MAX_ENUMERATION_DIM;
            let results = json!({
                "n": code.n(),
                "k": code.k(),
                "d": if small { Some(code.minimum_distance()?) } else { None },
                "weight_distribution": if small { Some(code.weight_distribution()?) } else { None },
                "classification": code.classify(),
                "generator": rows(code.generator()),
            });
            Ok(CommandOutput::new(inputs.0, results))
        }

        Command::Aut { codefile, brute_force, expect_order } => {
            let code = inputs.code(codefile)?;
            let g = if *brute_force { brute_force_aut(&code)? } else { automorphism_group_with(&code, &opts)? };
            let order = g.order();
            let results = json!({
                "n": code.n(),
                "k": code.k(),
                "method": if *brute_force { "exhaustive" } else { "backtrack" },
                "order": order.to_string(),
                "generators": generators(&g),
                "base": g.base().iter().map(|b| b + 1).collect::<Vec<_>>(),
                "basic_orbit_sizes": g.basic_orbit_sizes(),
            });
            let mut out = CommandOutput::new(inputs.0, results);
            out.claims = claims::aut_claims(&code, &order);
            if let Some(want) = expect_order {
                let c = requested("expect_order", "automorphism group order requested on the command line", want, order.to_string());
                out.mismatch |= c.status == ClaimStatus::Mismatch;
                out.claims.push(c);
            }
            Ok(out)
        }

        Command::Logical { outer, inner, perm } => {
            let css = inputs.css(outer, inner)?;
            let results = match perm {
                Some(path) => {
                    let p = inputs.parse(path, Permutation::parse)?;
                    let act = induced_action(&css, &p)?;
                    let labels: Vec<BitVector> = std::iter::once(BitVector::zeros(css.k()))
                        .chain((0..css.k()).map(|i| BitVector::unit(css.k(), i)))
                        .collect();
                    let coset_check = labels
                        .iter()
                        .map(|b| verify_coset_action(&css, &p, b))
                        .collect::<autgate::Result<Vec<bool>>>()
                        .map(|v| v.into_iter().all(|x| x))
                        .ok();
                    json!({
                        "n": css.n(),
                        "k": css.k(),
                        "perm": p.one_based(),
                        "t1": rows(&act.t1),
                        "t2": rows(&act.t2),
                        "t3": rows(&act.t3),
                        "logical_matrix": rows(&act.logical_matrix()),
                        "coset_action_on_unit_labels": coset_check,
                    })
                }
                None => {
                    let aut = intersect_aut_with(&[css.c1().clone(), css.c2().clone()], &opts)?;
                    let gens = aut
                        .generators()
                        .iter()
                        .map(|p| {
                            let m = induced_action(&css, p)?.logical_matrix();
                            Ok(json!({ "perm": p.one_based(), "logical_matrix": rows(&m) }))
                        })
                        .collect::<autgate::Result<Vec<_>>>()?;
                    json!({
                        "n": css.n(),
                        "k": css.k(),
                        "aut_order": aut.order().to_string(),
                        "generators": gens,
                    })
                }
            };
            Ok(CommandOutput::new(inputs.0, results))
        }

        Command::Analyze { outer, inner, printed } => {
            let css = inputs.css(outer, inner)?;
            let printed = printed.iter().map(|p| inputs.matrix(p)).collect::<Result<Vec<_>>>()?;
            let aut = intersect_aut_with(&[css.c1().clone(), css.c2().clone()], &opts)?;
            let report = structure_report(&css, &aut)?;
            let phase = match phase_action(&css) {
                Ok(p) => json!({ "doubly_even": true, "residues": p.residues }),
                Err(autgate::Error::NotDoublyEven(why)) => json!({ "doubly_even": false, "reason": why }),
                Err(e) => return Err(e.into()),
            };
            let mut results = json!({
                "structure": report,
                "phase": phase,
                "fourier": fourier_report(&css),
            });
            let mut claims = claims::structure_claims(&css, &report);
            if !printed.is_empty() {
                let f = printed_generator_fidelity(&css, &aut, &printed)?;
                claims.push(ClaimCheck {
                    id: "printed_generators".into(),
                    claim: "the logical image group equals the group of the supplied matrices".into(),
                    expected: "equal orders, every supplied matrix is a member".into(),
                    computed: format!(
                        "orders {} / {}, members {:?}",
                        f.computed_order.value, f.printed_order.value, f.members
                    ),
                    status: if f.holds() { ClaimStatus::Match } else { ClaimStatus::Mismatch },
                });
                results["printed"] = json!(f);
            }
            let mut out = CommandOutput::new(inputs.0, results);
            out.claims = claims;
            Ok(out)
        }

        Command::Stab { stabfile } => {
            let code = inputs.parse(stabfile, load_stabilizer)?;
            let g = stab_aut_group_with(&code, &opts)?;
            let order = g.order();
            let reps = g
                .generators()
                .iter()
                .map(|p| stab_symplectic_rep(&code, p))
                .collect::<autgate::Result<Vec<_>>>()?;
            let image = MatrixGroup::new(2 * code.k(), reps.iter().map(|r| r.matrix().clone()).collect())?.order()?;
            let labeling = agl18_labeling(&code)?;
            let results = json!({
                "n": code.n(),
                "k": code.k(),
                "aut_order": order.to_string(),
                "generators": generators(&g),
                "symplectic_images": reps
                    .iter()
                    .map(|r| json!({ "matrix": rows(r.matrix()), "preserves_x_span": r.preserves_x_span() }))
                    .collect::<Vec<_>>(),
                "image_order": image,
                "agl_1_8_labeling": labeling,
            });
            let mut out = CommandOutput::new(inputs.0, results);
            out.claims = claims::stabilizer_claims(&code, &order);
            Ok(out)
        }

        Command::Synth { outer, inner, target, word_out, element_cap } => {
            let css = inputs.css(outer, inner)?;
            let target = LogicalMatrix::new(inputs.matrix(target)?)?;
            let aut = intersect_aut_with(&[css.c1().clone(), css.c2().clone()], &opts)?;
            let data = AutData::with_cap(&css, aut.generators(), *element_cap)?;
            let word = synthesize(&data, &target)?;
            let effect = verify_word(&css, &word)?;
            let verified = effect == target;
            let doc = word.to_document();
            if let Some(path) = word_out {
                let text = serde_json::to_string_pretty(&doc).expect("word document serializes");
                std::fs::write(path, text + "\n")
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            }
            let results = json!({
                "n": css.n(),
                "k": css.k(),
                "algebra_dimension": data.algebra_dimension(),
                "length": word.len(),
                "cost": word.cost(),
                "verified": verified,
                "word": doc,
            });
            let mut out = CommandOutput::new(inputs.0, results);
            out.mismatch = !verified;
            Ok(out)
        }

        Command::Verify { outer, inner, word, target } => {
            let css = inputs.css(outer, inner)?;
            let doc: WordDocument = {
                let text = inputs.read(word)?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("{}: invalid word document: {e}", word.display())))?
            };
            let w = InstructionWord::from_document(&doc, &css)
                .map_err(|source| CliError::Input { path: word.display().to_string(), source })?;
            let effect = verify_word(&css, &w)?;
            let target = match target {
                Some(p) => Some(LogicalMatrix::new(inputs.matrix(p)?)?),
                None => doc.target.clone(),
            };
            let matches = target.as_ref().map(|t| *t == effect);
            let results = json!({
                "n": css.n(),
                "k": css.k(),
                "length": w.len(),
                "cost": w.cost(),
                "effect": rows(effect.matrix()),
                "matches_target": matches,
            });
            let mut out = CommandOutput::new(inputs.0, results);
            out.mismatch = matches == Some(false);
            if target.is_none() {
                out.notes.push("note: no target given; effect reported only".into());
            }
            Ok(out)
        }

        Command::Families { family } => match family {
            Family::Rm { r, s, m } => {
                let (css, degrees) = rm_css(*r, *s, *m)?;
                let ok = rm_block_check(*r, *s, *m)?;
                let mut out = CommandOutput::new(
                    inputs.0,
                    json!({ "n": css.n(), "k": css.k(), "logical_degrees": degrees, "degree_filtration_preserved": ok }),
                );
                out.mismatch = !ok;
                Ok(out)
            }
            Family::Cyclic { n } => {
                let factors = factor_cyclic(*n)?;
                let mut degrees: Vec<usize> = factors.iter().filter_map(|f| f.degree()).collect();
                degrees.sort_unstable();
                Ok(CommandOutput::new(
                    inputs.0,
                    json!({
                        "n": n,
                        "factors": factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "factor_degrees": degrees,
                        "cyclotomic_cosets": cyclotomic_cosets(*n),
                    }),
                ))
            }
        },

        Command::Selfcheck => {
            let checks = claims::selfcheck();
            let count = |s: ClaimStatus| checks.iter().filter(|c| c.status == s).count();
            let results = json!({
                "total": checks.len(),
                "matched": count(ClaimStatus::Match),
                "flagged": count(ClaimStatus::Flagged),
                "mismatched": count(ClaimStatus::Mismatch),
            });
            let mut out = CommandOutput::new(inputs.0, results);
            out.claims = checks;
            Ok(out)
        }
    }
}
