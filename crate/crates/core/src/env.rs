//! Freshness environments, judgements and theories.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::perm::{AtomSet, DisplaySet, Perm};
use crate::signature::{Signature, Sort, Var};
use crate::term::{SortingEnv, Term, TermError};

/// The hypothesis `atoms # x : sort` for one variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binding {
    pub atoms: AtomSet,
    pub sort: Sort,
}

/// A finite map from variables to freshness hypotheses. A binding with an
/// empty atom set is distinct from an absent one.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreshnessEnv {
    map: BTreeMap<Var, Binding>,
}

impl FreshnessEnv {
    pub fn new() -> FreshnessEnv {
        FreshnessEnv::default()
    }

    pub fn single(x: &Var, atoms: AtomSet, sort: Sort) -> FreshnessEnv {
        let mut fe = FreshnessEnv::new();
        fe.insert(x.clone(), atoms, sort);
        fe
    }

    pub fn insert(&mut self, x: Var, atoms: AtomSet, sort: Sort) -> Option<Binding> {
        self.map.insert(x, Binding { atoms, sort })
    }

    pub fn with(mut self, x: &Var, atoms: AtomSet, sort: Sort) -> FreshnessEnv {
        self.insert(x.clone(), atoms, sort);
        self
    }

    pub fn get(&self, x: &Var) -> Option<&Binding> {
        self.map.get(x)
    }

    pub fn contains(&self, x: &Var) -> bool {
        self.map.contains_key(x)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Binding)> {
        self.map.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.map.keys()
    }

    /// The second projection.
    pub fn sorting(&self) -> SortingEnv {
        self.map
            .iter()
            .map(|(x, b)| (x.clone(), b.sort.clone()))
            .collect()
    }

    /// `self ≤ other`: larger domain, same sorts, larger atom sets.
    pub fn leq(&self, other: &FreshnessEnv) -> bool {
        self.map.iter().all(|(x, b)| {
            other
                .map
                .get(x)
                .is_some_and(|b2| b.sort == b2.sort && b.atoms.is_subset(&b2.atoms))
        })
    }

    /// `self^{#extra}`: every binding gains `extra`.
    pub fn extend(&self, extra: &AtomSet) -> FreshnessEnv {
        if extra.is_empty() {
            return self.clone();
        }
        FreshnessEnv {
            map: self
                .map
                .iter()
                .map(|(x, b)| {
                    (
                        x.clone(),
                        Binding {
                            atoms: b.atoms.union(extra).copied().collect(),
                            sort: b.sort.clone(),
                        },
                    )
                })
                .collect(),
        }
    }

    /// Removes `atoms` from every binding.
    pub fn shrink(&self, atoms: &AtomSet) -> FreshnessEnv {
        FreshnessEnv {
            map: self
                .map
                .iter()
                .map(|(x, b)| {
                    (
                        x.clone(),
                        Binding {
                            atoms: b.atoms.difference(atoms).copied().collect(),
                            sort: b.sort.clone(),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn act(&self, p: &Perm) -> FreshnessEnv {
        FreshnessEnv {
            map: self
                .map
                .iter()
                .map(|(x, b)| {
                    (
                        x.clone(),
                        Binding {
                            atoms: p.act_set(&b.atoms),
                            sort: b.sort.clone(),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn support(&self) -> AtomSet {
        self.map
            .values()
            .flat_map(|b| b.atoms.iter().copied())
            .collect()
    }
}

impl fmt::Display for FreshnessEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (x, b)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if !b.atoms.is_empty() {
                write!(f, "{} # ", DisplaySet(&b.atoms))?;
            }
            write!(f, "{x} : {}", b.sort)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for FreshnessEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavour {
    /// Freshness may appear on the right of the turnstile.
    Nel,
    /// Equations only.
    Neol,
}

impl fmt::Display for Flavour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavour::Nel => "nel",
            Flavour::Neol => "neol",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JudgementError {
    #[error("unknown sort `{0}`")]
    UnknownSort(Sort),
    #[error("variable `{var}` is bound at unknown sort `{sort}`")]
    UnknownBindingSort { var: Var, sort: Sort },
    #[error("left-hand side: {0}")]
    Lhs(TermError),
    #[error("right-hand side: {0}")]
    Rhs(TermError),
}

/// `fe ⊢ fresh # lhs ≈ rhs : sort`, well-formed by construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Judgement {
    env: FreshnessEnv,
    fresh: AtomSet,
    lhs: Term,
    rhs: Term,
    sort: Sort,
}

impl Judgement {
    pub fn new(
        sig: &Signature,
        env: FreshnessEnv,
        fresh: AtomSet,
        lhs: Term,
        rhs: Term,
        sort: Sort,
    ) -> Result<Judgement, JudgementError> {
        if !sig.has_sort(&sort) {
            return Err(JudgementError::UnknownSort(sort));
        }
        if let Some((var, b)) = env.iter().find(|(_, b)| !sig.has_sort(&b.sort)) {
            return Err(JudgementError::UnknownBindingSort {
                var: var.clone(),
                sort: b.sort.clone(),
            });
        }
        let se = env.sorting();
        lhs.check_sort(sig, &se, &sort)
            .map_err(JudgementError::Lhs)?;
        rhs.check_sort(sig, &se, &sort)
            .map_err(JudgementError::Rhs)?;
        Ok(Judgement {
            env,
            fresh,
            lhs,
            rhs,
            sort,
        })
    }

    /// An equation `fe ⊢ lhs ≈ rhs : sort`.
    pub fn equation(
        sig: &Signature,
        env: FreshnessEnv,
        lhs: Term,
        rhs: Term,
        sort: Sort,
    ) -> Result<Judgement, JudgementError> {
        Judgement::new(sig, env, AtomSet::new(), lhs, rhs, sort)
    }

    /// A freshness judgement `fe ⊢ fresh # t : sort`.
    pub fn freshness(
        sig: &Signature,
        env: FreshnessEnv,
        fresh: AtomSet,
        t: Term,
        sort: Sort,
    ) -> Result<Judgement, JudgementError> {
        Judgement::new(sig, env, fresh, t.clone(), t, sort)
    }

    pub fn env(&self) -> &FreshnessEnv {
        &self.env
    }

    pub fn fresh(&self) -> &AtomSet {
        &self.fresh
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn sort(&self) -> &Sort {
        &self.sort
    }

    /// True when no freshness is asserted, so the judgement lives in both logics.
    pub fn is_equation(&self) -> bool {
        self.fresh.is_empty()
    }

    /// Meta-level action on every component.
    pub fn act(&self, p: &Perm) -> Judgement {
        Judgement {
            env: self.env.act(p),
            fresh: p.act_set(&self.fresh),
            lhs: self.lhs.meta_act(p),
            rhs: self.rhs.meta_act(p),
            sort: self.sort.clone(),
        }
    }

    /// Atoms mentioned anywhere in the judgement.
    pub fn support(&self) -> AtomSet {
        let mut out = self.env.support();
        out.extend(self.fresh.iter().copied());
        out.extend(self.lhs.support());
        out.extend(self.rhs.support());
        out
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- ", self.env)?;
        if self.fresh.is_empty() {
            write!(f, "{} ~ {} : {}", self.lhs, self.rhs, self.sort)
        } else if self.lhs == self.rhs {
            write!(
                f,
                "{} # {} : {}",
                DisplaySet(&self.fresh),
                self.lhs,
                self.sort
            )
        } else {
            write!(
                f,
                "{} # {} ~ {} : {}",
                DisplaySet(&self.fresh),
                self.lhs,
                self.rhs,
                self.sort
            )
        }
    }
}

impl fmt::Debug for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("axiom `{0}` declared twice")]
    DuplicateAxiom(String),
    #[error("axiom `{0}` asserts freshness, which an equation-only theory cannot hold")]
    FreshnessInNeol(String),
}

/// A named collection of axioms over a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub sig: Arc<Signature>,
    pub flavour: Flavour,
    axioms: Vec<(String, Judgement)>,
}

impl Theory {
    pub fn new(name: &str, sig: Arc<Signature>, flavour: Flavour) -> Theory {
        Theory {
            name: name.to_string(),
            sig,
            flavour,
            axioms: Vec::new(),
        }
    }

    pub fn add_axiom(&mut self, name: &str, j: Judgement) -> Result<(), TheoryError> {
        if self.axiom(name).is_some() {
            return Err(TheoryError::DuplicateAxiom(name.to_string()));
        }
        if self.flavour == Flavour::Neol && !j.is_equation() {
            return Err(TheoryError::FreshnessInNeol(name.to_string()));
        }
        self.axioms.push((name.to_string(), j));
        Ok(())
    }

    pub fn axiom(&self, name: &str) -> Option<&Judgement> {
        self.axioms.iter().find(|(n, _)| n == name).map(|(_, j)| j)
    }

    /// The name of an axiom equal to `j`, if any.
    pub fn find_axiom(&self, j: &Judgement) -> Option<&str> {
        self.axioms
            .iter()
            .find(|(_, a)| a == j)
            .map(|(n, _)| n.as_str())
    }

    pub fn axioms(&self) -> &[(String, Judgement)] {
        &self.axioms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Atom;
    use proptest::prelude::*;

    fn at(s: &str) -> Atom {
        Atom::parse(s).unwrap()
    }

    fn atoms(names: &[&str]) -> AtomSet {
        names.iter().map(|n| at(n)).collect()
    }

    fn tm() -> Sort {
        Sort::new("tm")
    }

    fn x() -> Var {
        Var::new("x")
    }

    #[test]
    fn sorting_projection() {
        let fe = FreshnessEnv::new().with(&x(), atoms(&["a"]), tm()).with(
            &Var::new("y"),
            AtomSet::new(),
            tm(),
        );
        assert_eq!(fe.sorting(), [(x(), tm()), (Var::new("y"), tm())].into());
        assert!(FreshnessEnv::new().sorting().is_empty());
    }

    #[test]
    fn order_examples() {
        let small = FreshnessEnv::single(&x(), atoms(&["a"]), tm());
        let big = FreshnessEnv::single(&x(), atoms(&["a", "b"]), tm()).with(
            &Var::new("y"),
            AtomSet::new(),
            tm(),
        );
        assert!(small.leq(&big));
        assert!(!big.leq(&small));
        assert!(small.leq(&small));
        let other_sort = FreshnessEnv::single(&x(), atoms(&["a"]), Sort::new("ty"));
        assert!(!small.leq(&other_sort));
    }

    #[test]
    fn extend_examples() {
        let fe = FreshnessEnv::single(&x(), atoms(&["a"]), tm());
        assert_eq!(
            fe.extend(&atoms(&["b"])),
            FreshnessEnv::single(&x(), atoms(&["a", "b"]), tm())
        );
        assert_eq!(fe.extend(&AtomSet::new()), fe);
        assert!(FreshnessEnv::new().extend(&atoms(&["a"])).is_empty());
    }

    #[test]
    fn act_and_support() {
        let fe = FreshnessEnv::single(&x(), atoms(&["a"]), tm());
        assert_eq!(
            fe.act(&Perm::swap(at("a"), at("b"))),
            FreshnessEnv::single(&x(), atoms(&["b"]), tm())
        );
        assert_eq!(fe.act(&Perm::identity()), fe);
        let two = fe.with(&Var::new("y"), atoms(&["b"]), tm());
        assert_eq!(two.support(), atoms(&["a", "b"]));
    }

    #[test]
    fn judgements_are_checked() {
        let sig = Signature::lambda();
        let fe = FreshnessEnv::single(&x(), AtomSet::new(), tm());
        assert!(
            Judgement::equation(&sig, fe.clone(), Term::var(&x()), Term::var(&x()), tm()).is_ok()
        );
        assert!(matches!(
            Judgement::equation(&sig, fe, Term::var(&Var::new("y")), Term::var(&x()), tm()),
            Err(JudgementError::Lhs(TermError::UnboundVariable(_)))
        ));
    }

    #[test]
    fn display() {
        let sig = Signature::lambda();
        let fe = FreshnessEnv::single(&x(), AtomSet::new(), tm());
        let lam = Term::op(sig.op("lam", &[at("a")]).unwrap(), vec![Term::var(&x())]);
        let j = Judgement::freshness(&sig, fe.clone(), atoms(&["a"]), lam, tm()).unwrap();
        assert_eq!(j.to_string(), "(x : tm) |- {a} # lam[a] x : tm");
        let fe2 = FreshnessEnv::single(&x(), atoms(&["a", "b"]), tm());
        assert_eq!(fe2.to_string(), "({a b} # x : tm)");
        assert_eq!(FreshnessEnv::new().to_string(), "()");
    }

    fn arb_env() -> impl Strategy<Value = FreshnessEnv> {
        proptest::collection::btree_map(
            0usize..3,
            proptest::collection::btree_set(0u32..5, 0..4),
            0..3,
        )
        .prop_map(|m| {
            m.into_iter().fold(FreshnessEnv::new(), |fe, (v, s)| {
                fe.with(
                    &Var::new(["x", "y", "z"][v]),
                    s.into_iter().map(Atom::from_index).collect(),
                    tm(),
                )
            })
        })
    }

    fn arb_set() -> impl Strategy<Value = AtomSet> {
        proptest::collection::btree_set(0u32..6, 0..4)
            .prop_map(|s| s.into_iter().map(Atom::from_index).collect())
    }

    proptest! {
        #[test]
        fn leq_is_a_partial_order(a in arb_env(), b in arb_env(), c in arb_env()) {
            prop_assert!(a.leq(&a));
            if a.leq(&b) && b.leq(&c) {
                prop_assert!(a.leq(&c));
            }
            if a.leq(&b) && b.leq(&a) {
                prop_assert_eq!(&a, &b);
            }
        }

        #[test]
        fn extend_laws(fe in arb_env(), s1 in arb_set(), s2 in arb_set(), p in proptest::collection::vec((0u32..6, 0u32..6), 0..4)) {
            prop_assert!(fe.leq(&fe.extend(&s1)));
            let both: AtomSet = s1.union(&s2).copied().collect();
            prop_assert_eq!(fe.extend(&s1).extend(&s2), fe.extend(&both));
            let p = p.into_iter().fold(Perm::identity(), |q, (a, b)| {
                Perm::swap(Atom::from_index(a), Atom::from_index(b)).compose(&q)
            });
            prop_assert_eq!(fe.act(&p).support(), p.act_set(&fe.support()));
        }
    }
}
