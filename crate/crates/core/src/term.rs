//! Terms with suspended permutations, their two permutation actions,
//! substitution and support.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::perm::{AtomSet, Perm};
use crate::signature::{OpSymbol, Signature, Sort, Var};

pub type SortingEnv = BTreeMap<Var, Sort>;

/// A substitution, total on the variables it is applied to.
pub type Substitution = BTreeMap<Var, Term>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("variable `{0}` is not bound in the environment")]
    UnboundVariable(Var),
    #[error("`{op}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },
    #[error("argument {index} of `{op}` has sort `{found}`, expected `{expected}`")]
    ArgumentSort {
        op: String,
        index: usize,
        expected: Sort,
        found: Sort,
    },
    #[error("operation family `{0}` is not part of the signature")]
    UnknownFamily(String),
    #[error("term has sort `{found}`, expected `{expected}`")]
    SortMismatch { expected: Sort, found: Sort },
    #[error("substitution has no image for variable `{0}`")]
    MissingImage(Var),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Susp(Perm, Var),
    Op(OpSymbol, Vec<Term>),
}

impl Term {
    pub fn var(x: &Var) -> Term {
        Term::Susp(Perm::identity(), x.clone())
    }

    pub fn susp(p: Perm, x: &Var) -> Term {
        Term::Susp(p, x.clone())
    }

    pub fn op(op: OpSymbol, args: Vec<Term>) -> Term {
        Term::Op(op, args)
    }

    /// The sort of `self` under `se`, checking every formation step.
    pub fn sort_check(&self, sig: &Signature, se: &SortingEnv) -> Result<Sort, TermError> {
        match self {
            Term::Susp(_, x) => se
                .get(x)
                .cloned()
                .ok_or_else(|| TermError::UnboundVariable(x.clone())),
            Term::Op(op, args) => {
                let family = op.family();
                if sig.family(&family.name) != Some(family) {
                    return Err(TermError::UnknownFamily(family.name.clone()));
                }
                let (arg_sorts, result) = op.op_type();
                if arg_sorts.len() != args.len() {
                    return Err(TermError::ArityMismatch {
                        op: op.to_string(),
                        expected: arg_sorts.len(),
                        found: args.len(),
                    });
                }
                for (index, (arg, expected)) in args.iter().zip(arg_sorts).enumerate() {
                    let found = arg.sort_check(sig, se)?;
                    if &found != expected {
                        return Err(TermError::ArgumentSort {
                            op: op.to_string(),
                            index,
                            expected: expected.clone(),
                            found,
                        });
                    }
                }
                Ok(result.clone())
            }
        }
    }

    /// Checks that `self` has sort `expected` under `se`.
    pub fn check_sort(
        &self,
        sig: &Signature,
        se: &SortingEnv,
        expected: &Sort,
    ) -> Result<(), TermError> {
        let found = self.sort_check(sig, se)?;
        if &found == expected {
            Ok(())
        } else {
            Err(TermError::SortMismatch {
                expected: expected.clone(),
                found,
            })
        }
    }

    /// `p ∗ t`: the permutation is pushed into suspensions by left composition.
    pub fn object_act(&self, p: &Perm) -> Term {
        if p.is_identity() {
            return self.clone();
        }
        match self {
            Term::Susp(q, x) => Term::Susp(p.compose(q), x.clone()),
            Term::Op(op, args) => {
                Term::Op(op.act(p), args.iter().map(|a| a.object_act(p)).collect())
            }
        }
    }

    /// `p · t`: suspensions are conjugated, so variables are treated as
    /// standing for unknown but fixed objects.
    pub fn meta_act(&self, p: &Perm) -> Term {
        if p.is_identity() {
            return self.clone();
        }
        let inv = p.invert();
        self.meta_act_with(p, &inv)
    }

    fn meta_act_with(&self, p: &Perm, inv: &Perm) -> Term {
        match self {
            Term::Susp(q, x) => Term::Susp(p.compose(q).compose(inv), x.clone()),
            Term::Op(op, args) => Term::Op(
                op.act(p),
                args.iter().map(|a| a.meta_act_with(p, inv)).collect(),
            ),
        }
    }

    /// `t{σ}`. Every variable of `self` must have an image.
    pub fn substitute(&self, sigma: &Substitution) -> Result<Term, TermError> {
        match self {
            Term::Susp(p, x) => sigma
                .get(x)
                .map(|t| t.object_act(p))
                .ok_or_else(|| TermError::MissingImage(x.clone())),
            Term::Op(op, args) => Ok(Term::Op(
                op.clone(),
                args.iter()
                    .map(|a| a.substitute(sigma))
                    .collect::<Result<_, _>>()?,
            )),
        }
    }

    /// The least support under the meta-level action.
    pub fn support(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_support(&mut out);
        out
    }

    fn collect_support(&self, out: &mut AtomSet) {
        match self {
            Term::Susp(p, _) => out.extend(p.support()),
            Term::Op(op, args) => {
                out.extend(op.params().atoms().iter().copied());
                for a in args {
                    a.collect_support(out);
                }
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Susp(_, x) => {
                out.insert(x.clone());
            }
            Term::Op(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Susp(..) => 0,
            Term::Op(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Susp(..) => 1,
            Term::Op(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// All subterms, including `self`, in pre-order.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = vec![self];
        if let Term::Op(_, args) = self {
            for a in args {
                out.extend(a.subterms());
            }
        }
        out
    }
}

/// The substitution `x ↦ p x` on the given variables.
pub fn permuting_substitution<'a>(
    p: &Perm,
    vars: impl IntoIterator<Item = &'a Var>,
) -> Substitution {
    vars.into_iter()
        .map(|x| (x.clone(), Term::susp(p.clone(), x)))
        .collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Susp(p, x) if p.is_identity() => write!(f, "{x}"),
            Term::Susp(p, x) => write!(f, "{p} {x}"),
            Term::Op(op, args) => {
                write!(f, "{op}")?;
                match args.as_slice() {
                    [] => Ok(()),
                    [Term::Susp(p, x)] if p.is_identity() => write!(f, " {x}"),
                    [arg @ Term::Op(..)] => write!(f, " {arg}"),
                    args => {
                        write!(f, "(")?;
                        for (i, a) in args.iter().enumerate() {
                            if i > 0 {
                                write!(f, ", ")?;
                            }
                            write!(f, "{a}")?;
                        }
                        write!(f, ")")
                    }
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Atom;

    fn at(s: &str) -> Atom {
        Atom::parse(s).unwrap()
    }

    fn x() -> Var {
        Var::new("x")
    }

    fn swap(a: &str, b: &str) -> Perm {
        Perm::swap(at(a), at(b))
    }

    #[test]
    fn sort_check_examples() {
        let sig = Signature::lambda();
        let tm = Sort::new("tm");
        let se: SortingEnv = [(x(), tm.clone())].into();
        let lam = Term::op(sig.op("lam", &[at("a")]).unwrap(), vec![Term::var(&x())]);
        assert_eq!(lam.sort_check(&sig, &se), Ok(tm));
        assert_eq!(
            Term::susp(swap("a", "b"), &x()).sort_check(&sig, &SortingEnv::new()),
            Err(TermError::UnboundVariable(x()))
        );
        let var_a = Term::op(sig.op("var", &[at("a")]).unwrap(), vec![]);
        let bad = Term::op(sig.op("app", &[]).unwrap(), vec![var_a]);
        assert!(matches!(
            bad.sort_check(&sig, &se),
            Err(TermError::ArityMismatch {
                expected: 2,
                found: 1,
                ..
            })
        ));
    }

    #[test]
    fn object_act_examples() {
        let sig = Signature::lambda();
        assert_eq!(
            Term::var(&x()).object_act(&swap("a", "b")),
            Term::susp(swap("a", "b"), &x())
        );
        let var = |a| Term::op(sig.op("var", &[at(a)]).unwrap(), vec![]);
        let lam = |a, t| Term::op(sig.op("lam", &[at(a)]).unwrap(), vec![t]);
        assert_eq!(
            lam("a", var("a")).object_act(&swap("a", "b")),
            lam("b", var("b"))
        );
        let t = lam("a", Term::susp(swap("a", "c"), &x()));
        assert_eq!(t.object_act(&Perm::identity()), t);
    }

    #[test]
    fn meta_act_examples() {
        let sig = Signature::lambda();
        assert_eq!(
            Term::susp(swap("a", "c"), &x()).meta_act(&swap("a", "b")),
            Term::susp(swap("b", "c"), &x())
        );
        assert_eq!(Term::var(&x()).meta_act(&swap("a", "b")), Term::var(&x()));
        let lam = |a, t| Term::op(sig.op("lam", &[at(a)]).unwrap(), vec![t]);
        let cd = Term::susp(swap("c", "d"), &x());
        assert_eq!(lam("a", cd.clone()).meta_act(&swap("a", "b")), lam("b", cd));
    }

    #[test]
    fn substitute_examples() {
        let sig = Signature::lambda();
        let y = Var::new("y");
        let var_a = Term::op(sig.op("var", &[at("a")]).unwrap(), vec![]);
        let var_b = Term::op(sig.op("var", &[at("b")]).unwrap(), vec![]);
        let sigma: Substitution = [(x(), var_a.clone())].into();
        assert_eq!(
            Term::susp(swap("a", "b"), &x()).substitute(&sigma),
            Ok(var_b)
        );
        assert_eq!(Term::var(&x()).substitute(&sigma), Ok(var_a.clone()));
        let app = sig.op("app", &[]).unwrap();
        let t = Term::op(app.clone(), vec![Term::var(&x()), Term::var(&y)]);
        let sigma: Substitution = [(x(), var_a.clone()), (y.clone(), Term::var(&x()))].into();
        assert_eq!(
            t.substitute(&sigma),
            Ok(Term::op(app, vec![var_a, Term::var(&x())]))
        );
        assert_eq!(
            Term::var(&y).substitute(&[(x(), Term::var(&x()))].into()),
            Err(TermError::MissingImage(y))
        );
    }

    #[test]
    fn support_examples() {
        let sig = Signature::lambda();
        assert!(Term::var(&x()).support().is_empty());
        assert_eq!(
            Term::susp(swap("a", "b"), &x()).support(),
            [at("a"), at("b")].into()
        );
        let lam = Term::op(sig.op("lam", &[at("a")]).unwrap(), vec![Term::var(&x())]);
        assert_eq!(lam.support(), [at("a")].into());
    }

    #[test]
    fn printing() {
        let sig = Signature::lambda();
        let lam = |a, t| Term::op(sig.op("lam", &[at(a)]).unwrap(), vec![t]);
        let app = |t, u| Term::op(sig.op("app", &[]).unwrap(), vec![t, u]);
        let var = |a| Term::op(sig.op("var", &[at(a)]).unwrap(), vec![]);
        assert_eq!(lam("a", Term::var(&x())).to_string(), "lam[a] x");
        assert_eq!(
            lam("b", Term::susp(swap("a", "b"), &x())).to_string(),
            "lam[b]((a b) x)"
        );
        assert_eq!(
            app(lam("a", var("a")), Term::var(&Var::new("y"))).to_string(),
            "app(lam[a] var[a], y)"
        );
    }
}
