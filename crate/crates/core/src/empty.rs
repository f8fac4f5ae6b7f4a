//! Equality and freshness in the theory without axioms.
//!
//! Both are decided by structural recursion. Equal pairs can be certified by
//! an equation-only derivation, and any valid judgement by a freshness-aware
//! one.

use std::sync::Arc;

use thiserror::Error;

use crate::env::{Flavour, FreshnessEnv, Judgement, JudgementError, Theory};
use crate::kernel::build::{
    canonical_pair, eq_to_fresh, local_vars, neo, refl, subst_node, swap_equation, BuildError,
};
use crate::kernel::translate::embed;
use crate::kernel::{Derivation, Rule};
use crate::perm::{gen_transposition, AtomSet, AtomTuple};
use crate::signature::{Signature, Sort};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("`{0}` does not hold in the empty theory")]
    NotATheorem(Box<Judgement>),
    #[error(transparent)]
    Judgement(#[from] JudgementError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// The theory with no axioms.
pub fn empty_theory(sig: Arc<Signature>, flavour: Flavour) -> Theory {
    Theory::new("empty", sig, flavour)
}

fn eq_go(fe: &FreshnessEnv, t1: &Term, t2: &Term) -> bool {
    match (t1, t2) {
        (Term::Susp(p, x), Term::Susp(q, y)) => {
            x == y
                && fe
                    .get(x)
                    .is_some_and(|b| p.disagreement_set(q).is_subset(&b.atoms))
        }
        (Term::Op(o1, a1), Term::Op(o2, a2)) => {
            o1 == o2 && a1.len() == a2.len() && a1.iter().zip(a2).all(|(u, v)| eq_go(fe, u, v))
        }
        _ => false,
    }
}

fn fresh_go(fe: &FreshnessEnv, atoms: &AtomSet, t: &Term) -> bool {
    match t {
        Term::Susp(p, x) => fe
            .get(x)
            .is_some_and(|b| p.invert().act_set(atoms).is_subset(&b.atoms)),
        Term::Op(op, args) => {
            atoms.is_disjoint(&op.support()) && args.iter().all(|u| fresh_go(fe, atoms, u))
        }
    }
}

pub fn decide_eq(
    sig: &Signature,
    fe: &FreshnessEnv,
    t1: &Term,
    t2: &Term,
    s: &Sort,
) -> Result<bool, JudgementError> {
    Judgement::equation(sig, fe.clone(), t1.clone(), t2.clone(), s.clone())?;
    Ok(eq_go(fe, t1, t2))
}

pub fn decide_fresh(
    sig: &Signature,
    fe: &FreshnessEnv,
    atoms: &AtomSet,
    t: &Term,
    s: &Sort,
) -> Result<bool, JudgementError> {
    Judgement::freshness(sig, fe.clone(), atoms.clone(), t.clone(), s.clone())?;
    Ok(fresh_go(fe, atoms, t))
}

/// Whether `fe ⊢ ā # t ≈ t' : s` holds: `t` and `t'` are equal and `ā` is
/// fresh for them.
pub fn decide_judgement(j: &Judgement) -> bool {
    eq_go(j.env(), j.lhs(), j.rhs()) && fresh_go(j.env(), j.fresh(), j.lhs())
}

/// The equation standing for `fe ⊢ ā # t : s`: `fe^{#a'} ⊢ t ≈ (a a') ∗ t : s`
/// with the canonical ordering and fresh tuple.
pub fn freshness_as_equation(
    sig: &Signature,
    fe: &FreshnessEnv,
    atoms: &AtomSet,
    t: &Term,
    s: &Sort,
) -> Result<Judgement, BuildError> {
    swap_equation(sig, fe, &canonical_pair(fe, atoms, t), t, s)
}

/// An equation-only derivation of `fe ⊢ t1 ≈ t2 : s`.
pub fn certify_eq(
    th: &Theory,
    fe: &FreshnessEnv,
    t1: &Term,
    t2: &Term,
    s: &Sort,
) -> Result<Derivation, CertifyError> {
    let j = Judgement::equation(&th.sig, fe.clone(), t1.clone(), t2.clone(), s.clone())?;
    if !eq_go(fe, t1, t2) {
        return Err(CertifyError::NotATheorem(Box::new(j)));
    }
    Ok(certify_go(th, fe, t1, t2)?)
}

fn certify_go(
    th: &Theory,
    fe: &FreshnessEnv,
    t1: &Term,
    t2: &Term,
) -> Result<Derivation, BuildError> {
    if t1 == t2 {
        return refl(th, fe, t1);
    }
    match (t1, t2) {
        (Term::Susp(p, x), Term::Susp(q, _)) => {
            let sort = fe.get(x).expect("decided pairs are bound").sort.clone();
            let susp = neo(
                th,
                Rule::Susp {
                    left: p.clone(),
                    right: q.clone(),
                    var: x.clone(),
                    sort,
                },
                vec![],
            )?;
            neo(th, Rule::Weak { env: fe.clone() }, vec![susp])
        }
        (Term::Op(op, a1), Term::Op(_, a2)) => {
            let vars = local_vars(&th.sig, a1.len());
            let mut local = FreshnessEnv::new();
            for (x, s) in vars.iter().zip(op.op_type().0) {
                local.insert(x.clone(), AtomSet::new(), s.clone());
            }
            let main = refl(
                th,
                &local,
                &Term::op(op.clone(), vars.iter().map(Term::var).collect()),
            )?;
            let mut entries = Vec::new();
            for ((x, u), v) in vars.into_iter().zip(a1).zip(a2) {
                let eq = certify_go(th, fe, u, v)?;
                let fresh = refl(th, fe, u)?;
                entries.push((
                    x,
                    eq,
                    Some((fresh, (AtomTuple::empty(), AtomTuple::empty()))),
                ));
            }
            subst_node(th, Flavour::Neol, fe, entries, main)
        }
        _ => unreachable!("only called on decided pairs"),
    }
}

/// A freshness-aware derivation of any judgement that holds in the empty
/// theory.
pub fn certify_judgement(th: &Theory, j: &Judgement) -> Result<Derivation, CertifyError> {
    if !decide_judgement(j) {
        return Err(CertifyError::NotATheorem(Box::new(j.clone())));
    }
    let (fe, t) = (j.env(), j.lhs());
    let eq = embed(th, &certify_go(th, fe, t, j.rhs())?)?;
    if j.fresh().is_empty() {
        return Ok(eq);
    }
    let pair = canonical_pair(fe, j.fresh(), t);
    let g = gen_transposition(&pair.0, &pair.1).map_err(BuildError::from)?;
    let swapped = certify_go(th, &fe.extend(&pair.1.underlying()), t, &t.object_act(&g))?;
    let fresh = eq_to_fresh(th, fe, &pair, embed(th, &swapped)?)?;
    if j.lhs() == j.rhs() {
        return Ok(fresh);
    }
    Ok(
        Derivation::infer_as(th, Flavour::Nel, Rule::Trans, vec![fresh, eq])
            .map_err(BuildError::from)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_nel, check_neol};
    use crate::syntax::parse_judgement;

    fn sig() -> Arc<Signature> {
        Arc::new(Signature::lambda())
    }

    fn judge(src: &str) -> Judgement {
        parse_judgement(&sig(), src).unwrap()
    }

    fn eq(src: &str) -> bool {
        let j = judge(src);
        decide_eq(&sig(), j.env(), j.lhs(), j.rhs(), j.sort()).unwrap()
    }

    fn fresh(src: &str) -> bool {
        let j = judge(src);
        decide_fresh(&sig(), j.env(), j.fresh(), j.lhs(), j.sort()).unwrap()
    }

    #[test]
    fn equality_examples() {
        assert!(eq("({a b} # x : tm) |- (a b) x ~ x : tm"));
        assert!(eq("(x : tm) |- x ~ x : tm"));
        assert!(!eq("(x : tm) |- (a b) x ~ x : tm"));
        assert!(!eq("(x : tm, y : tm) |- x ~ y : tm"));
        assert!(!eq("(x : tm) |- lam[a] x ~ lam[b] x : tm"));
    }

    #[test]
    fn freshness_examples() {
        assert!(fresh("({a} # x : tm) |- {a} # lam[b] x : tm"));
        assert!(!fresh("(x : tm) |- {a} # lam[a] x : tm"));
        assert!(fresh(
            "(x : tm) |- app(x, lam[a] x) ~ app(x, lam[a] x) : tm"
        ));
        assert!(fresh("({b} # x : tm) |- {a} # (a b) x : tm"));
    }

    #[test]
    fn sort_errors_are_reported() {
        let fe = FreshnessEnv::new();
        let t = Term::var(&"x".into());
        assert!(decide_eq(&sig(), &fe, &t, &t, &"tm".into()).is_err());
    }

    #[test]
    fn certificates_have_the_expected_shape() {
        let th = empty_theory(sig(), Flavour::Neol);
        let j = judge("({a b} # x : tm) |- (a b) x ~ x : tm");
        let d = certify_eq(&th, j.env(), j.lhs(), j.rhs(), j.sort()).unwrap();
        assert_eq!(d.size(), 2);
        assert!(matches!(d.premises()[0].rule(), Rule::Susp { .. }));
        assert_eq!(check_neol(&th, &d), Ok(()));

        let j = judge("({a b} # x : tm) |- app(lam[c] (a b) x, x) ~ app(lam[c] x, x) : tm");
        let d = certify_eq(&th, j.env(), j.lhs(), j.rhs(), j.sort()).unwrap();
        assert!(matches!(d.rule(), Rule::Subst { .. }));
        assert_eq!(d.conclusion(), &j);
        assert_eq!(check_neol(&th, &d), Ok(()));

        let j = judge("(x : tm) |- (a b) x ~ x : tm");
        assert!(matches!(
            certify_eq(&th, j.env(), j.lhs(), j.rhs(), j.sort()),
            Err(CertifyError::NotATheorem(_))
        ));
    }

    #[test]
    fn freshness_certificates_check() {
        let th = empty_theory(sig(), Flavour::Nel);
        for src in [
            "({a} # x : tm) |- {a} # lam[b] x : tm",
            "({a c} # x : tm, y : tm) |- {a} # app((a c) x, lam[b] x) : tm",
            "({a b c} # x : tm) |- {c} # (a b) x ~ x : tm",
        ] {
            let j = judge(src);
            let d = certify_judgement(&th, &j).unwrap_or_else(|e| panic!("{src}: {e}"));
            assert_eq!(d.conclusion(), &j, "{src}");
            assert_eq!(check_nel(&th, &d), Ok(()), "{src}");
        }
    }
}
