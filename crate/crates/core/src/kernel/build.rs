//! Derivation builders.
//!
//! Each builder assembles its output through [`Derivation::infer_as`], so a
//! builder bug surfaces as an error rather than as a bogus tree. Public
//! builders also re-check their input derivations; the private workers they
//! share with the translator do not.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{check_as, CheckError, Derivation, Rule, RuleError, TuplePair};
use crate::env::{Binding, Flavour, FreshnessEnv, Judgement, JudgementError, Theory};
use crate::perm::{fresh_tuple, gen_transposition, AtomSet, AtomTuple, Perm, PermError};
use crate::signature::{Signature, Sort, Var};
use crate::term::{Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("input derivation is rejected: {0}")]
    Input(CheckError),
    #[error("input concludes `{found}`, expected `{expected}`")]
    Conclusion { expected: String, found: String },
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Judgement(#[from] JudgementError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn precondition(msg: impl Into<String>) -> BuildError {
    BuildError::Precondition(msg.into())
}

pub(crate) fn neo(
    th: &Theory,
    rule: Rule,
    premises: Vec<Derivation>,
) -> Result<Derivation, BuildError> {
    Ok(Derivation::infer_as(th, Flavour::Neol, rule, premises)?)
}

pub(crate) fn nel(
    th: &Theory,
    rule: Rule,
    premises: Vec<Derivation>,
) -> Result<Derivation, BuildError> {
    Ok(Derivation::infer_as(th, Flavour::Nel, rule, premises)?)
}

/// `env ⊢ t ≈ t`, with the sort computed.
pub fn refl(th: &Theory, env: &FreshnessEnv, t: &Term) -> Result<Derivation, BuildError> {
    let sort = t.sort_check(&th.sig, &env.sorting())?;
    neo(
        th,
        Rule::Refl {
            env: env.clone(),
            term: t.clone(),
            sort,
        },
        vec![],
    )
}

pub(crate) fn weak_to(
    th: &Theory,
    d: Derivation,
    env: &FreshnessEnv,
) -> Result<Derivation, BuildError> {
    if d.conclusion().env() == env {
        Ok(d)
    } else {
        neo(th, Rule::Weak { env: env.clone() }, vec![d])
    }
}

pub(crate) fn trans_chain(th: &Theory, steps: Vec<Derivation>) -> Result<Derivation, BuildError> {
    let mut it = steps.into_iter();
    let first = it.next().ok_or_else(|| precondition("empty chain"))?;
    it.try_fold(first, |acc, d| neo(th, Rule::Trans, vec![acc, d]))
}

/// `n` variable names for local substitution sources: `x`, `x1`, `x2`, …,
/// skipping any name the signature uses for an operation family.
pub fn local_vars(sig: &Signature, n: usize) -> Vec<Var> {
    std::iter::once("x".to_string())
        .chain((1..).map(|i| format!("x{i}")))
        .filter(|name| sig.family(name).is_none())
        .take(n)
        .map(|name| Var::new(&name))
        .collect()
}

fn local_var(sig: &Signature) -> Var {
    local_vars(sig, 1).remove(0)
}

/// The ordering of `atoms` and the least tuple fresh for `(fe, atoms, t)`.
pub fn canonical_pair(fe: &FreshnessEnv, atoms: &AtomSet, t: &Term) -> TuplePair {
    let order = AtomTuple::sorted(atoms);
    let mut avoid = fe.support();
    avoid.extend(atoms.iter().copied());
    avoid.extend(t.support());
    let fresh = fresh_tuple(order.len(), &avoid);
    (order, fresh)
}

/// The conclusion `fe^{#fresh} ⊢ t ≈ (order fresh) ∗ t : s`.
pub fn swap_equation(
    sig: &Signature,
    fe: &FreshnessEnv,
    pair: &TuplePair,
    t: &Term,
    s: &Sort,
) -> Result<Judgement, BuildError> {
    let g = gen_transposition(&pair.0, &pair.1)?;
    Ok(Judgement::equation(
        sig,
        fe.extend(&pair.1.underlying()),
        t.clone(),
        t.object_act(&g),
        s.clone(),
    )?)
}

/// Per source variable: the equation hypothesis and, in the equation-only
/// form, the freshness hypothesis with its tuples.
pub(crate) type SubstEntry = (Var, Derivation, Option<(Derivation, TuplePair)>);

/// Assembles a substitution node. `entries` hold, per source variable, the
/// equation hypothesis and, for the equation-only form, the freshness
/// hypothesis with its tuples. Entries may come in any order.
pub(crate) fn subst_node(
    th: &Theory,
    flavour: Flavour,
    target: &FreshnessEnv,
    mut entries: Vec<SubstEntry>,
    main: Derivation,
) -> Result<Derivation, BuildError> {
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut eqs = Vec::new();
    let mut freshes = Vec::new();
    let mut tuples = BTreeMap::new();
    for (x, eq, fresh) in entries {
        eqs.push(eq);
        if let Some((d, pair)) = fresh {
            freshes.push(d);
            tuples.insert(x, pair);
        }
    }
    eqs.extend(freshes);
    eqs.push(main);
    Ok(Derivation::infer_as(
        th,
        flavour,
        Rule::Subst {
            env: target.clone(),
            tuples,
        },
        eqs,
    )?)
}

fn checked(th: &Theory, flavour: Flavour, d: &Derivation) -> Result<(), BuildError> {
    check_as(th, flavour, d).map_err(BuildError::Input)
}

fn expect_conclusion(d: &Derivation, expected: &Judgement) -> Result<(), BuildError> {
    if d.conclusion() == expected {
        Ok(())
    } else {
        Err(BuildError::Conclusion {
            expected: expected.to_string(),
            found: d.conclusion().to_string(),
        })
    }
}

fn expect_equation(d: &Derivation) -> Result<(), BuildError> {
    if d.conclusion().is_equation() {
        Ok(())
    } else {
        Err(precondition("input must conclude an equation"))
    }
}

// ---------------------------------------------------------------------------
// Freshness and swapping equations in the freshness-aware logic.

/// From `fe ⊢ atoms # t : s`, derives `fe^{#a'} ⊢ t ≈ (a a') ∗ t : s` with
/// `(a, a')` the [`canonical_pair`].
pub fn derive_fresh_to_eq(
    th: &Theory,
    fe: &FreshnessEnv,
    atoms: &AtomSet,
    t: &Term,
    s: &Sort,
    proof: &Derivation,
) -> Result<Derivation, BuildError> {
    checked(th, Flavour::Nel, proof)?;
    let expected = Judgement::freshness(&th.sig, fe.clone(), atoms.clone(), t.clone(), s.clone())?;
    expect_conclusion(proof, &expected)?;
    fresh_to_eq(th, proof.clone())
}

pub(crate) fn fresh_to_eq(th: &Theory, proof: Derivation) -> Result<Derivation, BuildError> {
    let j = proof.conclusion();
    let (fe, t, s) = (j.env().clone(), j.lhs().clone(), j.sort().clone());
    let (order, fresh) = canonical_pair(&fe, j.fresh(), &t);
    if order.is_empty() {
        return nel(
            th,
            Rule::Refl {
                env: fe,
                term: t,
                sort: s,
            },
            vec![],
        );
    }
    let intro = nel(
        th,
        Rule::AtmIntro {
            atoms: fresh.underlying(),
        },
        vec![proof],
    )?;
    let susp = nel(
        th,
        Rule::Susp {
            left: Perm::identity(),
            right: gen_transposition(&order, &fresh)?,
            var: local_var(&th.sig),
            sort: s,
        },
        vec![],
    )?;
    nel(
        th,
        Rule::Subst {
            env: fe.extend(&fresh.underlying()),
            tuples: BTreeMap::new(),
        },
        vec![intro, susp],
    )
}

/// From `fe^{#a'} ⊢ t ≈ (a a') ∗ t : s` with the [`canonical_pair`],
/// derives `fe ⊢ atoms # t : s`.
pub fn derive_eq_to_fresh(
    th: &Theory,
    fe: &FreshnessEnv,
    atoms: &AtomSet,
    t: &Term,
    s: &Sort,
    proof: &Derivation,
) -> Result<Derivation, BuildError> {
    let pair = canonical_pair(fe, atoms, t);
    derive_eq_to_fresh_with(th, fe, &pair, t, s, proof)
}

/// As [`derive_eq_to_fresh`], for any ordering and any sufficiently fresh tuple.
pub fn derive_eq_to_fresh_with(
    th: &Theory,
    fe: &FreshnessEnv,
    pair: &TuplePair,
    t: &Term,
    s: &Sort,
    proof: &Derivation,
) -> Result<Derivation, BuildError> {
    checked(th, Flavour::Nel, proof)?;
    expect_conclusion(proof, &swap_equation(&th.sig, fe, pair, t, s)?)?;
    eq_to_fresh(th, fe, pair, proof.clone())
}

pub(crate) fn eq_to_fresh(
    th: &Theory,
    fe: &FreshnessEnv,
    pair: &TuplePair,
    proof: Derivation,
) -> Result<Derivation, BuildError> {
    let j = proof.conclusion().clone();
    let (t, s) = (j.lhs(), j.sort());
    let (order, fresh) = pair;
    if order.len() != fresh.len() {
        return Err(precondition("tuples differ in length"));
    }
    let w = fresh.underlying();
    let mut mentioned = fe.support();
    mentioned.extend(order.atoms().iter().copied());
    mentioned.extend(t.support());
    if w.iter().any(|a| mentioned.contains(a)) {
        return Err(precondition(
            "swapping tuple is not fresh for the environment, atoms and term",
        ));
    }
    if order.is_empty() {
        return nel(
            th,
            Rule::Refl {
                env: fe.clone(),
                term: t.clone(),
                sort: s.clone(),
            },
            vec![],
        );
    }
    let g = gen_transposition(order, fresh)?;
    let base = nel(
        th,
        Rule::Refl {
            env: fe.clone(),
            term: t.clone(),
            sort: s.clone(),
        },
        vec![],
    )?;
    let intro = nel(th, Rule::AtmIntro { atoms: w.clone() }, vec![base])?;
    let equivar = nel(
        th,
        Rule::FreshEquivar {
            atoms: w.clone(),
            perm: g,
            var: local_var(&th.sig),
            sort: s.clone(),
        },
        vec![],
    )?;
    let swapped = nel(
        th,
        Rule::Subst {
            env: j.env().clone(),
            tuples: BTreeMap::new(),
        },
        vec![intro, equivar],
    )?;
    let there = nel(th, Rule::Trans, vec![proof.clone(), swapped])?;
    let back = nel(th, Rule::Symm, vec![proof])?;
    let round = nel(th, Rule::Trans, vec![there, back])?;
    nel(th, Rule::AtmElim { atoms: w }, vec![round])
}

// ---------------------------------------------------------------------------
// Equation-only constructions.

/// From `fe ⊢ t ≈ t' : s`, derives `fe ⊢ p ∗ t ≈ p ∗ t' : s`.
pub fn derive_object_act(th: &Theory, d: &Derivation, p: &Perm) -> Result<Derivation, BuildError> {
    checked(th, Flavour::Neol, d)?;
    object_act(th, d.clone(), p)
}

pub(crate) fn object_act(th: &Theory, d: Derivation, p: &Perm) -> Result<Derivation, BuildError> {
    expect_equation(&d)?;
    let j = d.conclusion().clone();
    let x = local_var(&th.sig);
    let local = FreshnessEnv::single(&x, AtomSet::new(), j.sort().clone());
    let main = refl(th, &local, &Term::susp(p.clone(), &x))?;
    let fresh = refl(th, j.env(), j.lhs())?;
    let empty = (AtomTuple::empty(), AtomTuple::empty());
    subst_node(
        th,
        Flavour::Neol,
        j.env(),
        vec![(x, d, Some((fresh, empty)))],
        main,
    )
}

/// From `fe ⊢ t ≈ t' : s`, derives `p·fe ⊢ p·t ≈ p·t' : s`.
pub fn derive_meta_act(th: &Theory, d: &Derivation, p: &Perm) -> Result<Derivation, BuildError> {
    checked(th, Flavour::Neol, d)?;
    meta_act(th, d.clone(), p)
}

pub(crate) fn meta_act(th: &Theory, d: Derivation, p: &Perm) -> Result<Derivation, BuildError> {
    expect_equation(&d)?;
    if p.is_identity() {
        return Ok(d);
    }
    let fe = d.conclusion().env().clone();
    let moved = fe.act(p);
    let inv = p.invert();
    let pushed = object_act(th, d, p)?;
    let mut avoid = moved.support();
    avoid.extend(p.support());
    let mut entries = Vec::new();
    for (x, Binding { atoms, sort }) in fe.iter() {
        let image = Term::susp(inv.clone(), x);
        let eq = refl(th, &moved, &image)?;
        let order = AtomTuple::sorted(atoms);
        let mut avoid_x = avoid.clone();
        avoid_x.extend(atoms.iter().copied());
        let fresh = fresh_tuple(order.len(), &avoid_x);
        let g = gen_transposition(&order, &fresh)?;
        let susp = neo(
            th,
            Rule::Susp {
                left: inv.clone(),
                right: g.compose(&inv),
                var: x.clone(),
                sort: sort.clone(),
            },
            vec![],
        )?;
        let hyp = weak_to(th, susp, &moved.extend(&fresh.underlying()))?;
        entries.push((x.clone(), eq, Some((hyp, (order, fresh)))));
    }
    subst_node(th, Flavour::Neol, &moved, entries, pushed)
}

/// `fe^{#ds(p1,p2)} ⊢ p1 ∗ t ≈ p2 ∗ t`, provided `ds(p1, p2)` is fresh for `t`.
pub fn derive_susp_perm(
    th: &Theory,
    fe: &FreshnessEnv,
    t: &Term,
    p1: &Perm,
    p2: &Perm,
) -> Result<Derivation, BuildError> {
    t.sort_check(&th.sig, &fe.sorting())?;
    susp_perm(th, fe, t, p1, p2)
}

pub(crate) fn susp_perm(
    th: &Theory,
    fe: &FreshnessEnv,
    t: &Term,
    p1: &Perm,
    p2: &Perm,
) -> Result<Derivation, BuildError> {
    let ds = p1.disagreement_set(p2);
    let support = t.support();
    if ds.iter().any(|a| support.contains(a)) {
        return Err(precondition(
            "the disagreement set of the permutations must be fresh for the term",
        ));
    }
    susp_perm_go(th, &fe.extend(&ds), fe, t, p1, p2)
}

fn susp_perm_go(
    th: &Theory,
    target: &FreshnessEnv,
    fe: &FreshnessEnv,
    t: &Term,
    p1: &Perm,
    p2: &Perm,
) -> Result<Derivation, BuildError> {
    match t {
        Term::Susp(q, x) => {
            let b = fe
                .get(x)
                .ok_or_else(|| TermError::UnboundVariable(x.clone()))?;
            let susp = neo(
                th,
                Rule::Susp {
                    left: p1.compose(q),
                    right: p2.compose(q),
                    var: x.clone(),
                    sort: b.sort.clone(),
                },
                vec![],
            )?;
            weak_to(th, susp, target)
        }
        Term::Op(op, args) => {
            let vars = local_vars(&th.sig, args.len());
            let (arg_sorts, _) = op.op_type();
            let mut local = FreshnessEnv::new();
            for (x, s) in vars.iter().zip(arg_sorts) {
                local.insert(x.clone(), AtomSet::new(), s.clone());
            }
            let main = refl(
                th,
                &local,
                &Term::op(op.act(p1), vars.iter().map(Term::var).collect()),
            )?;
            let mut entries = Vec::new();
            for (x, arg) in vars.into_iter().zip(args) {
                let eq = susp_perm_go(th, target, fe, arg, p1, p2)?;
                let fresh = refl(th, target, &arg.object_act(p1))?;
                entries.push((
                    x,
                    eq,
                    Some((fresh, (AtomTuple::empty(), AtomTuple::empty()))),
                ));
            }
            subst_node(th, Flavour::Neol, target, entries, main)
        }
    }
}

/// Shrinks the swapping tuples of `fe^{#b} ⊢ t ≈ (a b) ∗ t` to sub-tuples
/// `(a2, b2)`, giving `fe^{#b2} ⊢ t ≈ (a2 b2) ∗ t`. The environment `fe` is
/// taken to be the least one whose extension by `b` is the input's.
pub fn derive_throw_fresh(
    th: &Theory,
    d: &Derivation,
    a: &AtomTuple,
    b: &AtomTuple,
    a2: &AtomTuple,
    b2: &AtomTuple,
) -> Result<Derivation, BuildError> {
    checked(th, Flavour::Neol, d)?;
    throw_fresh(th, d.clone(), a, b, a2, b2)
}

pub(crate) fn throw_fresh(
    th: &Theory,
    d: Derivation,
    a: &AtomTuple,
    b: &AtomTuple,
    a2: &AtomTuple,
    b2: &AtomTuple,
) -> Result<Derivation, BuildError> {
    if a.len() != b.len() {
        return Err(precondition("outer tuples differ in length"));
    }
    if a2.len() != b2.len() {
        return Err(precondition("inner tuples differ in length"));
    }
    if a2.len() > a.len() {
        return Err(precondition("inner tuples are longer than the outer ones"));
    }
    let j = d.conclusion().clone();
    let (t, s) = (j.lhs(), j.sort());
    let (a_set, b_set) = (a.underlying(), b.underlying());
    if b_set
        .iter()
        .any(|x| a_set.contains(x) || t.support().contains(x))
    {
        return Err(precondition("supp(b) must be fresh for a and t"));
    }
    if !a2.underlying().is_subset(&a_set) {
        return Err(precondition("supp(a2) must be contained in supp(a)"));
    }
    if !b2.underlying().is_subset(&b_set) {
        return Err(precondition("supp(b2) must be contained in supp(b)"));
    }
    let fe = j.env().shrink(&b_set);
    expect_conclusion(
        &d,
        &swap_equation(&th.sig, &fe, &(a.clone(), b.clone()), t, s)?,
    )?;

    let mut avoid = j.env().support();
    avoid.extend(a_set.iter().copied());
    avoid.extend(b_set.iter().copied());
    avoid.extend(t.support());
    let c = fresh_tuple(a.len(), &avoid);
    avoid.extend(c.atoms().iter().copied());
    let c2 = fresh_tuple(a2.len(), &avoid);
    let order = a.concat(b2)?;
    let fresh = c.concat(&c2)?;
    let target = fe.extend(&b2.underlying());
    let big = target.extend(&fresh.underlying());

    let moved = meta_act(th, d, &gen_transposition(b, &c)?)?;
    let moved = weak_to(th, moved, &big)?;
    let ac = gen_transposition(a, &c)?;
    let bc = gen_transposition(b2, &c2)?;
    let shuffled = susp_perm(th, &fe.extend(&c.underlying()), t, &ac, &ac.compose(&bc))?;
    let hyp = neo(th, Rule::Trans, vec![moved, shuffled])?;

    let x = local_var(&th.sig);
    let susp = neo(
        th,
        Rule::Susp {
            left: Perm::identity(),
            right: gen_transposition(a2, b2)?,
            var: x.clone(),
            sort: s.clone(),
        },
        vec![],
    )?;
    let main = weak_to(
        th,
        susp,
        &FreshnessEnv::single(&x, order.underlying(), s.clone()),
    )?;
    let eq = refl(th, &target, t)?;
    subst_node(
        th,
        Flavour::Neol,
        &target,
        vec![(x, eq, Some((hyp, (order, fresh))))],
        main,
    )
}

/// Re-targets `fe^{#old.1} ⊢ t ≈ (old.0 old.1) ∗ t` to the pair `new`, which
/// orders the same atoms and whose tuple is also fresh. Implemented as the
/// meta-level action of a permutation moving only the fresh atoms.
pub fn rename_fresh(
    th: &Theory,
    d: &Derivation,
    old: &TuplePair,
    new: &TuplePair,
) -> Result<Derivation, BuildError> {
    checked(th, Flavour::Neol, d)?;
    rename(th, d.clone(), old, new)
}

pub(crate) fn rename(
    th: &Theory,
    d: Derivation,
    old: &TuplePair,
    new: &TuplePair,
) -> Result<Derivation, BuildError> {
    if old.0.underlying() != new.0.underlying()
        || old.0.len() != old.1.len()
        || new.0.len() != new.1.len()
    {
        return Err(precondition("renaming needs orderings of the same atoms"));
    }
    let mut pairs = Vec::new();
    for (i, a) in new.0.atoms().iter().enumerate() {
        let j = old
            .0
            .atoms()
            .iter()
            .position(|b| b == a)
            .expect("same atoms");
        pairs.push((old.1.atoms()[j], new.1.atoms()[i]));
    }
    let (old_set, new_set) = (old.1.underlying(), new.1.underlying());
    let from = new_set.difference(&old_set);
    let to = old_set.difference(&new_set);
    pairs.extend(from.copied().zip(to.copied()));
    let pi = Perm::from_pairs(pairs)?;
    meta_act(th, d, &pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_nel, check_neol};
    use crate::perm::Atom;
    use std::sync::Arc;

    fn at(s: &str) -> Atom {
        Atom::parse(s).unwrap()
    }

    fn setup() -> (Theory, Var, Sort) {
        let sig = Arc::new(Signature::lambda());
        (
            Theory::new("empty", sig, Flavour::Neol),
            Var::new("x"),
            Sort::new("tm"),
        )
    }

    #[test]
    fn local_vars_skip_family_names() {
        let mut sig = Signature::lambda();
        sig.add_family("x1", 0, &[], "tm").unwrap();
        let names: Vec<String> = local_vars(&sig, 3).iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["x", "x2", "x3"]);
    }

    #[test]
    fn object_act_of_refl() {
        let (th, x, tm) = setup();
        let fe = FreshnessEnv::single(&x, AtomSet::new(), tm);
        let d = refl(&th, &fe, &Term::var(&x)).unwrap();
        let ab = Perm::swap(at("a"), at("b"));
        let out = derive_object_act(&th, &d, &ab).unwrap();
        assert_eq!(out.conclusion().lhs(), &Term::susp(ab.clone(), &x));
        assert_eq!(out.conclusion().rhs(), &Term::susp(ab, &x));
        assert_eq!(check_neol(&th, &out), Ok(()));
    }

    #[test]
    fn meta_act_conjugates() {
        let (th, x, tm) = setup();
        let ab = Perm::swap(at("a"), at("b"));
        let susp = neo(
            &th,
            Rule::Susp {
                left: ab.clone(),
                right: Perm::identity(),
                var: x.clone(),
                sort: tm.clone(),
            },
            vec![],
        )
        .unwrap();
        let bc = Perm::swap(at("b"), at("c"));
        let out = derive_meta_act(&th, &susp, &bc).unwrap();
        assert_eq!(check_neol(&th, &out), Ok(()));
        assert_eq!(
            out.conclusion().lhs(),
            &Term::susp(Perm::swap(at("a"), at("c")), &x)
        );
        assert_eq!(
            out.conclusion().env(),
            &FreshnessEnv::single(&x, [at("a"), at("c")].into(), tm)
        );
    }

    #[test]
    fn susp_perm_rejects_clash() {
        let (th, x, tm) = setup();
        let fe = FreshnessEnv::single(&x, AtomSet::new(), tm);
        let t = Term::susp(Perm::swap(at("a"), at("c")), &x);
        let err = derive_susp_perm(
            &th,
            &fe,
            &t,
            &Perm::swap(at("a"), at("b")),
            &Perm::identity(),
        );
        assert!(matches!(err, Err(BuildError::Precondition(_))));
    }

    #[test]
    fn fresh_and_equation_round_trip_on_suspension() {
        let (mut th, x, tm) = setup();
        th.flavour = Flavour::Nel;
        let fe = FreshnessEnv::single(&x, [at("a")].into(), tm.clone());
        let t = Term::var(&x);
        let proof = nel(
            &th,
            Rule::FreshEquivar {
                atoms: [at("a")].into(),
                perm: Perm::identity(),
                var: x.clone(),
                sort: tm.clone(),
            },
            vec![],
        )
        .unwrap();
        let eq = derive_fresh_to_eq(&th, &fe, &[at("a")].into(), &t, &tm, &proof).unwrap();
        assert_eq!(check_nel(&th, &eq), Ok(()));
        assert_eq!(
            eq.conclusion().to_string(),
            "({a b} # x : tm) |- x ~ (a b) x : tm"
        );
        let back = derive_eq_to_fresh(&th, &fe, &[at("a")].into(), &t, &tm, &eq).unwrap();
        assert_eq!(check_nel(&th, &back), Ok(()));
        assert_eq!(back.conclusion(), proof.conclusion());
    }
}
