//! Derivation trees and the rule-by-rule kernel.
//!
//! A [`Derivation`] can only be built through [`Derivation::infer`], which
//! computes the conclusion of a rule instance from its premises and rejects
//! anything that is not an instance. The checkers in [`check`] re-run the same
//! computation over a whole tree, so trees assembled by hand or parsed from a
//! script are held to the same standard.

pub mod build;
pub mod check;
pub mod translate;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::env::{Flavour, FreshnessEnv, Judgement, JudgementError, Theory};
use crate::perm::{gen_transposition, AtomSet, AtomTuple, DisplaySet, Perm, PermError};
use crate::signature::{Sort, Var};
use crate::term::{Substitution, Term, TermError};

pub use check::{check, check_as, check_nel, check_neol, CheckError};

/// Ordering of a hypothesis' atom set and the fresh tuple it is swapped with.
pub type TuplePair = (AtomTuple, AtomTuple);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Axiom {
        name: String,
    },
    Refl {
        env: FreshnessEnv,
        term: Term,
        sort: Sort,
    },
    Symm,
    Trans,
    Weak {
        env: FreshnessEnv,
    },
    /// Premises are the substitution hypotheses in variable order, then the
    /// main premise. The equation-only form lists all equation hypotheses,
    /// then all freshness hypotheses, and records the tuples they use.
    Subst {
        env: FreshnessEnv,
        tuples: BTreeMap<Var, TuplePair>,
    },
    AtmIntro {
        atoms: AtomSet,
    },
    AtmElim {
        atoms: AtomSet,
    },
    FreshEquivar {
        atoms: AtomSet,
        perm: Perm,
        var: Var,
        sort: Sort,
    },
    Susp {
        left: Perm,
        right: Perm,
        var: Var,
        sort: Sort,
    },
}

impl Rule {
    pub fn name(&self, flavour: Flavour) -> &'static str {
        let neol = flavour == Flavour::Neol;
        match self {
            Rule::Axiom { .. } => "axiom",
            Rule::Refl { .. } => "refl",
            Rule::Symm if neol => "symm°",
            Rule::Symm => "symm",
            Rule::Trans if neol => "trans°",
            Rule::Trans => "trans",
            Rule::Weak { .. } if neol => "weak°",
            Rule::Weak { .. } => "weak",
            Rule::Subst { .. } if neol => "subst°",
            Rule::Subst { .. } => "subst",
            Rule::AtmIntro { .. } => "atm-intro",
            Rule::AtmElim { .. } if neol => "atm-elim°",
            Rule::AtmElim { .. } => "atm-elim",
            Rule::FreshEquivar { .. } => "#-equivar",
            Rule::Susp { .. } => "susp",
        }
    }

    pub fn in_flavour(&self, flavour: Flavour) -> bool {
        flavour == Flavour::Nel
            || !matches!(self, Rule::AtmIntro { .. } | Rule::FreshEquivar { .. })
    }
}

/// Why a single rule instance is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("expected {expected} premise(s), found {found}")]
    PremiseCount { expected: usize, found: usize },
    #[error("stored conclusion `{stored}` differs from the computed `{computed}`")]
    ConclusionMismatch {
        stored: Box<Judgement>,
        computed: Box<Judgement>,
    },
    #[error("side condition fails: {what} (offending atoms {})", DisplaySet(.atoms))]
    SideCondition { what: String, atoms: AtomSet },
    #[error("premises do not fit the rule: {0}")]
    Shape(String),
    #[error("no axiom named `{0}`")]
    AxiomNotFound(String),
    #[error("rule is not available in {0} derivations")]
    NotInFlavour(Flavour),
    #[error("equation-only derivations cannot assert freshness")]
    FreshnessInNeol,
    #[error("recorded tuples: {0}")]
    Tuple(String),
    #[error(transparent)]
    Judgement(#[from] JudgementError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn shape(msg: impl Into<String>) -> RuleError {
    RuleError::Shape(msg.into())
}

fn side(what: impl Into<String>, atoms: AtomSet) -> Result<(), RuleError> {
    if atoms.is_empty() {
        Ok(())
    } else {
        Err(RuleError::SideCondition {
            what: what.into(),
            atoms,
        })
    }
}

fn expect_count(premises: &[&Judgement], expected: usize) -> Result<(), RuleError> {
    if premises.len() == expected {
        Ok(())
    } else {
        Err(RuleError::PremiseCount {
            expected,
            found: premises.len(),
        })
    }
}

fn inter(a: &AtomSet, b: &AtomSet) -> AtomSet {
    a.intersection(b).copied().collect()
}

/// Computes the conclusion of `rule` applied to `premises` under the rules of
/// `flavour`, checking every side condition.
pub fn conclude(
    theory: &Theory,
    flavour: Flavour,
    rule: &Rule,
    premises: &[&Judgement],
) -> Result<Judgement, RuleError> {
    if !rule.in_flavour(flavour) {
        return Err(RuleError::NotInFlavour(flavour));
    }
    if flavour == Flavour::Neol && premises.iter().any(|p| !p.is_equation()) {
        return Err(RuleError::FreshnessInNeol);
    }
    let sig = &theory.sig;
    let out = match rule {
        Rule::Axiom { name } => {
            expect_count(premises, 0)?;
            theory
                .axiom(name)
                .cloned()
                .ok_or_else(|| RuleError::AxiomNotFound(name.clone()))?
        }
        Rule::Refl { env, term, sort } => {
            expect_count(premises, 0)?;
            Judgement::equation(sig, env.clone(), term.clone(), term.clone(), sort.clone())?
        }
        Rule::Symm => {
            expect_count(premises, 1)?;
            let p = premises[0];
            Judgement::new(
                sig,
                p.env().clone(),
                p.fresh().clone(),
                p.rhs().clone(),
                p.lhs().clone(),
                p.sort().clone(),
            )?
        }
        Rule::Trans => {
            expect_count(premises, 2)?;
            let (p, q) = (premises[0], premises[1]);
            if p.env() != q.env() {
                return Err(shape("premises have different environments"));
            }
            if p.sort() != q.sort() {
                return Err(shape("premises have different sorts"));
            }
            if p.rhs() != q.lhs() {
                return Err(shape(format!(
                    "middle terms differ: `{}` and `{}`",
                    p.rhs(),
                    q.lhs()
                )));
            }
            Judgement::new(
                sig,
                p.env().clone(),
                p.fresh().union(q.fresh()).copied().collect(),
                p.lhs().clone(),
                q.rhs().clone(),
                p.sort().clone(),
            )?
        }
        Rule::Weak { env } => {
            expect_count(premises, 1)?;
            let p = premises[0];
            if !p.env().leq(env) {
                return Err(shape(format!(
                    "premise environment {} is not below {}",
                    p.env(),
                    env
                )));
            }
            Judgement::new(
                sig,
                env.clone(),
                p.fresh().clone(),
                p.lhs().clone(),
                p.rhs().clone(),
                p.sort().clone(),
            )?
        }
        Rule::Subst { env, tuples } => conclude_subst(theory, flavour, env, tuples, premises)?,
        Rule::AtmIntro { atoms } => {
            expect_count(premises, 1)?;
            let p = premises[0];
            let mut mentioned = p.fresh().clone();
            mentioned.extend(p.lhs().support());
            mentioned.extend(p.rhs().support());
            side(
                "introduced atoms must be fresh for the premise",
                inter(atoms, &mentioned),
            )?;
            Judgement::new(
                sig,
                p.env().extend(atoms),
                p.fresh().union(atoms).copied().collect(),
                p.lhs().clone(),
                p.rhs().clone(),
                p.sort().clone(),
            )?
        }
        Rule::AtmElim { atoms } => {
            expect_count(premises, 1)?;
            let p = premises[0];
            for (x, b) in p.env().iter() {
                let missing: AtomSet = atoms.difference(&b.atoms).copied().collect();
                if !missing.is_empty() {
                    return Err(RuleError::SideCondition {
                        what: format!("binding of `{x}` lacks eliminated atoms"),
                        atoms: missing,
                    });
                }
            }
            let mut mentioned = p.fresh().clone();
            mentioned.extend(p.lhs().support());
            mentioned.extend(p.rhs().support());
            side(
                "eliminated atoms must be fresh for the conclusion",
                inter(atoms, &mentioned),
            )?;
            Judgement::new(
                sig,
                p.env().shrink(atoms),
                p.fresh().clone(),
                p.lhs().clone(),
                p.rhs().clone(),
                p.sort().clone(),
            )?
        }
        Rule::FreshEquivar {
            atoms,
            perm,
            var,
            sort,
        } => {
            expect_count(premises, 0)?;
            let t = Term::susp(perm.clone(), var);
            Judgement::freshness(
                sig,
                FreshnessEnv::single(var, atoms.clone(), sort.clone()),
                perm.act_set(atoms),
                t,
                sort.clone(),
            )?
        }
        Rule::Susp {
            left,
            right,
            var,
            sort,
        } => {
            expect_count(premises, 0)?;
            Judgement::equation(
                sig,
                FreshnessEnv::single(var, left.disagreement_set(right), sort.clone()),
                Term::susp(left.clone(), var),
                Term::susp(right.clone(), var),
                sort.clone(),
            )?
        }
    };
    if flavour == Flavour::Neol && !out.is_equation() {
        return Err(RuleError::FreshnessInNeol);
    }
    Ok(out)
}

fn conclude_subst(
    theory: &Theory,
    flavour: Flavour,
    target: &FreshnessEnv,
    tuples: &BTreeMap<Var, TuplePair>,
    premises: &[&Judgement],
) -> Result<Judgement, RuleError> {
    let main = *premises.last().ok_or(RuleError::PremiseCount {
        expected: 1,
        found: 0,
    })?;
    let source = main.env();
    let n = source.len();
    let expected = match flavour {
        Flavour::Nel => n + 1,
        Flavour::Neol => 2 * n + 1,
    };
    expect_count(premises, expected)?;
    let hyps = &premises[..n];
    let mut sigma = Substitution::new();
    let mut sigma2 = Substitution::new();
    for ((x, b), h) in source.iter().zip(hyps) {
        if h.env() != target {
            return Err(shape(format!(
                "hypothesis for `{x}` has environment {}, expected {target}",
                h.env()
            )));
        }
        if h.sort() != &b.sort {
            return Err(shape(format!(
                "hypothesis for `{x}` has sort `{}`, expected `{}`",
                h.sort(),
                b.sort
            )));
        }
        let wanted = match flavour {
            Flavour::Nel => &b.atoms,
            Flavour::Neol => &AtomSet::new(),
        };
        if h.fresh() != wanted {
            return Err(shape(format!(
                "hypothesis for `{x}` asserts freshness of {}, expected {}",
                DisplaySet(h.fresh()),
                DisplaySet(wanted)
            )));
        }
        sigma.insert(x.clone(), h.lhs().clone());
        sigma2.insert(x.clone(), h.rhs().clone());
    }
    match flavour {
        Flavour::Nel => {
            if !tuples.is_empty() {
                return Err(RuleError::Tuple(
                    "the freshness-aware rule records no tuples".into(),
                ));
            }
        }
        Flavour::Neol => {
            if !tuples.keys().eq(source.vars()) {
                return Err(RuleError::Tuple(
                    "tuples must be recorded for exactly the substituted variables".into(),
                ));
            }
            let target_support = target.support();
            for ((x, b), h) in source.iter().zip(&premises[n..2 * n]) {
                let (order, fresh) = &tuples[x];
                if order.underlying() != b.atoms {
                    return Err(RuleError::Tuple(format!(
                        "{order} does not order {} for `{x}`",
                        DisplaySet(&b.atoms)
                    )));
                }
                let image = &sigma[x];
                let mut avoid = target_support.clone();
                avoid.extend(b.atoms.iter().copied());
                avoid.extend(image.support());
                side(
                    format!("tuple {fresh} for `{x}` must be fresh"),
                    inter(&fresh.underlying(), &avoid),
                )?;
                let swap = gen_transposition(order, fresh)?;
                let expected = Judgement::equation(
                    &theory.sig,
                    target.extend(&fresh.underlying()),
                    image.clone(),
                    image.object_act(&swap),
                    b.sort.clone(),
                )?;
                if **h != expected {
                    return Err(shape(format!(
                        "freshness hypothesis for `{x}` should be `{expected}`, found `{h}`"
                    )));
                }
            }
        }
    }
    Ok(Judgement::new(
        &theory.sig,
        target.clone(),
        main.fresh().clone(),
        main.lhs().substitute(&sigma)?,
        main.rhs().substitute(&sigma2)?,
        main.sort().clone(),
    )?)
}

/// A rule instance together with its premises and conclusion.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    rule: Rule,
    premises: Vec<Derivation>,
    conclusion: Judgement,
}

impl Derivation {
    /// Applies `rule` under the theory's own flavour.
    pub fn infer(
        theory: &Theory,
        rule: Rule,
        premises: Vec<Derivation>,
    ) -> Result<Derivation, RuleError> {
        Derivation::infer_as(theory, theory.flavour, rule, premises)
    }

    pub fn infer_as(
        theory: &Theory,
        flavour: Flavour,
        rule: Rule,
        premises: Vec<Derivation>,
    ) -> Result<Derivation, RuleError> {
        let hyps: Vec<&Judgement> = premises.iter().map(|d| &d.conclusion).collect();
        let conclusion = conclude(theory, flavour, &rule, &hyps)?;
        Ok(Derivation {
            rule,
            premises,
            conclusion,
        })
    }

    /// Assembles a node without checking it. Only the checkers can tell
    /// whether the result is a derivation.
    pub fn assemble(rule: Rule, premises: Vec<Derivation>, conclusion: Judgement) -> Derivation {
        Derivation {
            rule,
            premises,
            conclusion,
        }
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn premises(&self) -> &[Derivation] {
        &self.premises
    }

    pub fn conclusion(&self) -> &Judgement {
        &self.conclusion
    }

    pub fn depth(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(Derivation::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Names of the rules used, pre-order.
    pub fn rules(&self) -> Vec<&Rule> {
        let mut out = vec![&self.rule];
        for p in &self.premises {
            out.extend(p.rules());
        }
        out
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊢ {}", self.rule, self.conclusion)?;
        if !self.premises.is_empty() {
            f.debug_list().entries(&self.premises).finish()?;
        }
        Ok(())
    }
}
