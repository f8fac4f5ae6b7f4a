//! Moving derivations between the two logics.
//!
//! [`translate_derivation`] turns a freshness-aware derivation into a pair of
//! equation-only derivations over the compiled theory; [`embed`] goes the
//! other way, rewriting equation-only substitution nodes into
//! freshness-aware ones.

use super::build::{
    canonical_pair, eq_to_fresh, local_vars, nel, neo, object_act, refl, rename, subst_node,
    susp_perm, swap_equation, throw_fresh, trans_chain, weak_to, BuildError,
};
use super::{check_as, Derivation, Rule, TuplePair};
use crate::compile::FreshAllocator;
use crate::env::{Flavour, Judgement, Theory};
use crate::perm::{gen_transposition, AtomSet, AtomTuple, Perm};

/// For `d` concluding `fe ⊢ ā # t ≈ t' : s`, returns equation-only
/// derivations of `fe ⊢ t ≈ t' : s` and of `fe^{#a'} ⊢ t ≈ (a a') ∗ t : s`
/// over `compiled`, where `(a, a')` is the canonical pair for `(fe, ā, t)`.
pub fn translate_derivation(
    nel_theory: &Theory,
    compiled: &Theory,
    d: &Derivation,
) -> Result<(Derivation, Derivation), BuildError> {
    check_as(nel_theory, Flavour::Nel, d).map_err(BuildError::Input)?;
    tr(compiled, d)
}

fn tr(th: &Theory, d: &Derivation) -> Result<(Derivation, Derivation), BuildError> {
    let j = d.conclusion();
    let fe = j.env();
    let t = j.lhs();
    let target_pair = canonical_pair(fe, j.fresh(), t);
    let plain = |th: &Theory| refl(th, fe, t);
    let finish = |th: &Theory,
                  d2: Derivation,
                  from: &TuplePair|
     -> Result<Derivation, BuildError> { rename(th, d2, from, &target_pair) };
    let ps = d.premises();
    match d.rule() {
        Rule::Axiom { name } => {
            let eq = Judgement::equation(
                &th.sig,
                fe.clone(),
                t.clone(),
                j.rhs().clone(),
                j.sort().clone(),
            )?;
            let first = th.find_axiom(&eq).ok_or_else(|| {
                BuildError::Precondition(format!("compiled theory lacks the equation of `{name}`"))
            })?;
            let d1 = neo(
                th,
                Rule::Axiom {
                    name: first.to_string(),
                },
                vec![],
            )?;
            let d2 = if target_pair.0.is_empty() {
                plain(th)?
            } else {
                let swap = swap_equation(&th.sig, fe, &target_pair, t, j.sort())?;
                let second = th.find_axiom(&swap).ok_or_else(|| {
                    BuildError::Precondition(format!(
                        "compiled theory lacks the swapping equation of `{name}`"
                    ))
                })?;
                neo(
                    th,
                    Rule::Axiom {
                        name: second.to_string(),
                    },
                    vec![],
                )?
            };
            Ok((d1, d2))
        }
        Rule::Refl { .. } | Rule::Susp { .. } => {
            Ok((neo(th, d.rule().clone(), vec![])?, plain(th)?))
        }
        Rule::FreshEquivar {
            perm, var, sort, ..
        } => {
            let d1 = plain(th)?;
            let d2 = if target_pair.0.is_empty() {
                plain(th)?
            } else {
                let g = gen_transposition(&target_pair.0, &target_pair.1)?;
                neo(
                    th,
                    Rule::Susp {
                        left: perm.clone(),
                        right: g.compose(perm),
                        var: var.clone(),
                        sort: sort.clone(),
                    },
                    vec![],
                )?
            };
            Ok((d1, d2))
        }
        Rule::Symm => {
            let p = ps[0].conclusion();
            let (p1, p2) = tr(th, &ps[0])?;
            let d1 = neo(th, Rule::Symm, vec![p1.clone()])?;
            if target_pair.0.is_empty() {
                return Ok((d1, plain(th)?));
            }
            let order = target_pair.0.clone();
            let w = FreshAllocator::default()
                .avoid_judgement(p)
                .take(order.len());
            let from = canonical_pair(fe, p.fresh(), p.lhs());
            let env = fe.extend(&w.underlying());
            let g = gen_transposition(&order, &w)?;
            let steps = vec![
                weak_to(th, d1.clone(), &env)?,
                rename(th, p2, &from, &(order.clone(), w.clone()))?,
                weak_to(th, object_act(th, p1, &g)?, &env)?,
            ];
            let d2 = finish(th, trans_chain(th, steps)?, &(order, w))?;
            Ok((d1, d2))
        }
        Rule::Trans => {
            let (p, q) = (ps[0].conclusion(), ps[1].conclusion());
            let (p1, p2) = tr(th, &ps[0])?;
            let (q1, q2) = tr(th, &ps[1])?;
            let d1 = neo(th, Rule::Trans, vec![p1.clone(), q1])?;
            if target_pair.0.is_empty() {
                return Ok((d1, plain(th)?));
            }
            let a1 = AtomTuple::sorted(p.fresh());
            let only2: AtomSet = q.fresh().difference(p.fresh()).copied().collect();
            let a2 = AtomTuple::sorted(&only2);
            let mut avoid = FreshAllocator::default();
            avoid.avoid_judgement(p).avoid_judgement(q);
            let w1 = avoid.take(a1.len());
            let w2 = avoid.take(a2.len());
            let env = fe.extend(&w1.underlying()).extend(&w2.underlying());
            let g1 = gen_transposition(&a1, &w1)?;
            let g2 = gen_transposition(&a2, &w2)?;
            let mut steps = vec![
                weak_to(
                    th,
                    rename(
                        th,
                        p2,
                        &canonical_pair(fe, p.fresh(), p.lhs()),
                        &(a1.clone(), w1.clone()),
                    )?,
                    &env,
                )?,
                weak_to(th, object_act(th, p1.clone(), &g1)?, &env)?,
            ];
            if !a2.is_empty() {
                let (qa, qb) = canonical_pair(fe, q.fresh(), q.lhs());
                let kept: Vec<usize> = (0..qa.len())
                    .filter(|i| only2.contains(&qa.atoms()[*i]))
                    .collect();
                let qb2 = AtomTuple::new(kept.iter().map(|i| qb.atoms()[*i]).collect())?;
                let thrown = if kept.len() == qa.len() {
                    q2
                } else {
                    throw_fresh(th, q2, &qa, &qb, &a2, &qb2)?
                };
                let moved = rename(th, thrown, &(a2.clone(), qb2), &(a2.clone(), w2.clone()))?;
                steps.push(weak_to(th, object_act(th, moved, &g1)?, &env)?);
            }
            let back = neo(th, Rule::Symm, vec![p1])?;
            steps.push(weak_to(th, object_act(th, back, &g1.compose(&g2))?, &env)?);
            let d2 = finish(
                th,
                trans_chain(th, steps)?,
                &(a1.concat(&a2)?, w1.concat(&w2)?),
            )?;
            Ok((d1, d2))
        }
        Rule::Weak { env } => {
            let p = ps[0].conclusion();
            let (p1, p2) = tr(th, &ps[0])?;
            let d1 = neo(th, Rule::Weak { env: env.clone() }, vec![p1])?;
            if target_pair.0.is_empty() {
                return Ok((d1, plain(th)?));
            }
            let renamed = rename(
                th,
                p2,
                &canonical_pair(p.env(), p.fresh(), p.lhs()),
                &target_pair,
            )?;
            let d2 = weak_to(th, renamed, &env.extend(&target_pair.1.underlying()))?;
            Ok((d1, d2))
        }
        Rule::AtmElim { atoms } => {
            let p = ps[0].conclusion();
            let (p1, p2) = tr(th, &ps[0])?;
            let d1 = neo(
                th,
                Rule::AtmElim {
                    atoms: atoms.clone(),
                },
                vec![p1],
            )?;
            if target_pair.0.is_empty() {
                return Ok((d1, plain(th)?));
            }
            let order = target_pair.0.clone();
            let w = FreshAllocator::default()
                .avoid_judgement(p)
                .avoid(atoms.iter().copied())
                .take(order.len());
            let moved = rename(
                th,
                p2,
                &canonical_pair(p.env(), p.fresh(), p.lhs()),
                &(order.clone(), w.clone()),
            )?;
            let elim = neo(
                th,
                Rule::AtmElim {
                    atoms: atoms.clone(),
                },
                vec![moved],
            )?;
            Ok((d1, finish(th, elim, &(order, w))?))
        }
        Rule::AtmIntro { atoms } => {
            let p = ps[0].conclusion();
            let (p1, p2) = tr(th, &ps[0])?;
            let d1 = weak_to(th, p1, fe)?;
            if target_pair.0.is_empty() {
                return Ok((d1, plain(th)?));
            }
            let (c, c_old) = canonical_pair(p.env(), p.fresh(), p.lhs());
            let b = AtomTuple::sorted(atoms);
            let mut avoid = FreshAllocator::default();
            avoid.avoid_judgement(p).avoid(atoms.iter().copied());
            let c2 = avoid.take(c.len());
            let b2 = avoid.take(b.len());
            let dd = avoid.take(2 * b.len());
            let s = j.sort().clone();
            let base = p.env().clone();
            let env1 = fe.extend(&b2.underlying()).extend(&c2.underlying());
            let eq = weak_to(
                th,
                rename(th, p2, &(c.clone(), c_old), &(c.clone(), c2.clone()))?,
                &env1,
            )?;
            let order = b.concat(&b2)?;
            let fresh = susp_perm(
                th,
                &base.extend(&c2.underlying()),
                t,
                &Perm::identity(),
                &gen_transposition(&order, &dd)?,
            )?;
            let x = local_vars(&th.sig, 1).remove(0);
            let main = neo(
                th,
                Rule::Susp {
                    left: Perm::identity(),
                    right: gen_transposition(&b, &b2)?,
                    var: x.clone(),
                    sort: s,
                },
                vec![],
            )?;
            let sub = subst_node(
                th,
                Flavour::Neol,
                &env1,
                vec![(x, eq, Some((fresh, (order, dd))))],
                main,
            )?;
            Ok((d1, finish(th, sub, &(c.concat(&b)?, c2.concat(&b2)?))?))
        }
        Rule::Subst { env: target, .. } => {
            let main_d = ps.last().expect("checked substitution has a main premise");
            let main = main_d.conclusion();
            let src = main.env();
            let hyps = &ps[..src.len()];
            let mut translated = Vec::new();
            for h in hyps {
                translated.push(tr(th, h)?);
            }
            let (m1, m2) = tr(th, main_d)?;
            let mut entries = Vec::new();
            for (((x, b), h), (h1, h2)) in src.iter().zip(hyps).zip(&translated) {
                let pair = canonical_pair(target, &b.atoms, h.conclusion().lhs());
                entries.push((x.clone(), h1.clone(), Some((h2.clone(), pair))));
            }
            let d1 = subst_node(th, Flavour::Neol, target, entries, m1)?;
            if target_pair.0.is_empty() {
                return Ok((d1, plain(th)?));
            }
            let order = target_pair.0.clone();
            let mut avoid = FreshAllocator::default();
            avoid.avoid_judgement(j).avoid_judgement(main);
            for h in hyps {
                avoid.avoid_judgement(h.conclusion());
            }
            let w = avoid.take(order.len());
            let w2 = avoid.take(order.len());
            let outer_env = target.extend(&w.underlying());
            let main2 = rename(
                th,
                m2,
                &canonical_pair(src, main.fresh(), main.lhs()),
                &(order.clone(), w.clone()),
            )?;
            let y = local_vars(&th.sig, 1).remove(0);
            let q = w.concat(&w2)?;
            let mut outer = Vec::new();
            for (((x, b), h), (_, h2)) in src.iter().zip(hyps).zip(translated) {
                let image = h.conclusion().lhs();
                let eq = refl(th, &outer_env, image)?;
                let a_i = AtomTuple::sorted(&b.atoms);
                let e_i = avoid.take(a_i.len());
                let f = avoid.take(q.len());
                let g_env = outer_env.extend(&e_i.underlying()).extend(&w2.underlying());
                let inner_eq = weak_to(
                    th,
                    rename(
                        th,
                        h2,
                        &canonical_pair(target, &b.atoms, image),
                        &(a_i.clone(), e_i.clone()),
                    )?,
                    &g_env,
                )?;
                let inner_fresh = susp_perm(
                    th,
                    &target.extend(&e_i.underlying()),
                    image,
                    &Perm::identity(),
                    &gen_transposition(&q, &f)?,
                )?;
                let inner_main = neo(
                    th,
                    Rule::Susp {
                        left: Perm::identity(),
                        right: gen_transposition(&w, &w2)?,
                        var: y.clone(),
                        sort: b.sort.clone(),
                    },
                    vec![],
                )?;
                let inner = subst_node(
                    th,
                    Flavour::Neol,
                    &g_env,
                    vec![(y.clone(), inner_eq, Some((inner_fresh, (q.clone(), f))))],
                    inner_main,
                )?;
                outer.push((
                    x.clone(),
                    eq,
                    Some((inner, (a_i.concat(&w)?, e_i.concat(&w2)?))),
                ));
            }
            let d2 = subst_node(th, Flavour::Neol, &outer_env, outer, main2)?;
            Ok((d1, finish(th, d2, &(order, w))?))
        }
    }
}

/// Rewrites an equation-only derivation into a freshness-aware one with the
/// same conclusion. Equation-only substitution nodes become freshness-aware
/// substitutions whose hypotheses are recovered from the swapping equations.
pub fn embed(th: &Theory, d: &Derivation) -> Result<Derivation, BuildError> {
    check_as(th, Flavour::Neol, d).map_err(BuildError::Input)?;
    embed_go(th, d)
}

fn embed_go(th: &Theory, d: &Derivation) -> Result<Derivation, BuildError> {
    let ps = d.premises();
    match d.rule() {
        Rule::Subst { env, tuples } => {
            let main = ps.last().expect("checked substitution has a main premise");
            let src = main.conclusion().env();
            let n = src.len();
            let mut hyps = Vec::new();
            for (i, (x, _)) in src.iter().enumerate() {
                let eq = embed_go(th, &ps[i])?;
                let sw = embed_go(th, &ps[n + i])?;
                let fresh = eq_to_fresh(th, env, &tuples[x], sw)?;
                hyps.push(nel(th, Rule::Trans, vec![fresh, eq])?);
            }
            hyps.push(embed_go(th, main)?);
            nel(
                th,
                Rule::Subst {
                    env: env.clone(),
                    tuples: Default::default(),
                },
                hyps,
            )
        }
        rule => {
            let premises = ps
                .iter()
                .map(|p| embed_go(th, p))
                .collect::<Result<Vec<_>, _>>()?;
            nel(th, rule.clone(), premises)
        }
    }
}
