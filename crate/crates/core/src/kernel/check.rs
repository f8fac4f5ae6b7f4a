//! Whole-tree checking.

use std::fmt;

use thiserror::Error;

use super::{conclude, Derivation, RuleError};
use crate::env::{Flavour, Judgement, Theory};

/// A rejected node, located by the premise indices leading to it from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {} ({rule}): {error}", Path(.path))]
pub struct CheckError {
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub error: RuleError,
}

struct Path<'a>(&'a [usize]);

impl fmt::Display for Path<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        write!(f, "root")?;
        for i in self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

/// Checks against the rules matching the theory's flavour.
pub fn check(theory: &Theory, d: &Derivation) -> Result<(), CheckError> {
    check_as(theory, theory.flavour, d)
}

pub fn check_nel(theory: &Theory, d: &Derivation) -> Result<(), CheckError> {
    check_as(theory, Flavour::Nel, d)
}

pub fn check_neol(theory: &Theory, d: &Derivation) -> Result<(), CheckError> {
    check_as(theory, Flavour::Neol, d)
}

pub fn check_as(theory: &Theory, flavour: Flavour, d: &Derivation) -> Result<(), CheckError> {
    let mut path = Vec::new();
    walk(theory, flavour, d, &mut path)
}

fn walk(
    theory: &Theory,
    flavour: Flavour,
    d: &Derivation,
    path: &mut Vec<usize>,
) -> Result<(), CheckError> {
    for (i, p) in d.premises().iter().enumerate() {
        path.push(i);
        walk(theory, flavour, p, path)?;
        path.pop();
    }
    let fail = |error| CheckError {
        path: path.clone(),
        rule: d.rule().name(flavour),
        error,
    };
    let hyps: Vec<&Judgement> = d.premises().iter().map(Derivation::conclusion).collect();
    let computed = conclude(theory, flavour, d.rule(), &hyps).map_err(fail)?;
    if &computed != d.conclusion() {
        return Err(fail(RuleError::ConclusionMismatch {
            stored: Box::new(d.conclusion().clone()),
            computed: Box::new(computed),
        }));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::FreshnessEnv;
    use crate::kernel::Rule;
    use crate::perm::{Atom, AtomSet, Perm};
    use crate::signature::{Signature, Sort, Var};
    use crate::term::Term;
    use std::sync::Arc;

    fn at(s: &str) -> Atom {
        Atom::parse(s).unwrap()
    }

    fn setup() -> (Theory, Var, Sort) {
        let sig = Arc::new(Signature::lambda());
        (
            Theory::new("empty", sig, Flavour::Nel),
            Var::new("x"),
            Sort::new("tm"),
        )
    }

    #[test]
    fn refl_leaf_checks() {
        let (th, x, tm) = setup();
        let env = FreshnessEnv::single(&x, AtomSet::new(), tm.clone());
        let d = Derivation::infer(
            &th,
            Rule::Refl {
                env,
                term: Term::var(&x),
                sort: tm,
            },
            vec![],
        )
        .unwrap();
        assert_eq!(check_nel(&th, &d), Ok(()));
        assert_eq!(check_neol(&th, &d), Ok(()));
    }

    #[test]
    fn susp_requires_exact_environment() {
        let (th, x, tm) = setup();
        let ab = Perm::swap(at("a"), at("b"));
        let rule = Rule::Susp {
            left: ab.clone(),
            right: Perm::identity(),
            var: x.clone(),
            sort: tm.clone(),
        };
        let exact = Derivation::infer(&th, rule.clone(), vec![]).unwrap();
        assert_eq!(
            exact.conclusion().env(),
            &FreshnessEnv::single(&x, [at("a"), at("b")].into(), tm.clone())
        );
        let wider = FreshnessEnv::single(&x, [at("a"), at("b"), at("c")].into(), tm.clone());
        let wrong = Judgement::equation(
            &th.sig,
            wider.clone(),
            Term::susp(ab, &x),
            Term::var(&x),
            tm.clone(),
        )
        .unwrap();
        let forged = Derivation::assemble(rule, vec![], wrong);
        assert!(matches!(
            check_nel(&th, &forged),
            Err(CheckError {
                error: RuleError::ConclusionMismatch { .. },
                ..
            })
        ));
        let weak = Derivation::infer(&th, Rule::Weak { env: wider }, vec![exact]).unwrap();
        assert_eq!(check_nel(&th, &weak), Ok(()));
    }

    #[test]
    fn atm_intro_side_condition() {
        let (th, x, tm) = setup();
        let refl = Derivation::infer(
            &th,
            Rule::Refl {
                env: FreshnessEnv::single(&x, AtomSet::new(), tm.clone()),
                term: Term::var(&x),
                sort: tm.clone(),
            },
            vec![],
        )
        .unwrap();
        let d = Derivation::infer(
            &th,
            Rule::AtmIntro {
                atoms: [at("a")].into(),
            },
            vec![refl],
        )
        .unwrap();
        assert_eq!(d.conclusion().to_string(), "({a} # x : tm) |- {a} # x : tm");
        assert_eq!(check_nel(&th, &d), Ok(()));
        assert!(matches!(
            check_neol(&th, &d),
            Err(CheckError {
                error: RuleError::NotInFlavour(Flavour::Neol),
                ..
            })
        ));
    }

    #[test]
    fn atm_elim_side_condition() {
        let (th, x, tm) = setup();
        let ab = Perm::swap(at("a"), at("b"));
        let susp = Derivation::infer(
            &th,
            Rule::Susp {
                left: ab,
                right: Perm::identity(),
                var: x,
                sort: tm,
            },
            vec![],
        )
        .unwrap();
        let err = Derivation::infer(
            &th,
            Rule::AtmElim {
                atoms: [at("a")].into(),
            },
            vec![susp],
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::SideCondition { atoms, .. } if atoms == [at("a")].into()));
    }
}
