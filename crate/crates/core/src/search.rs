//! Bounded backward proof search.
//!
//! The search is an untrusted oracle. It proposes rule instances whose
//! premises are drawn from finite candidate sets and lets the kernel build
//! every node, so anything it returns is a derivation. It is incomplete by
//! design: a `None` only means nothing was found within the budget.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::env::{Flavour, FreshnessEnv, Judgement, Theory};
use crate::kernel::build::local_vars;
use crate::kernel::{Derivation, Rule, TuplePair};
use crate::perm::{fresh_tuple, gen_transposition, AtomSet, AtomTuple, Perm};
use crate::signature::Var;
use crate::term::{Substitution, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_depth: usize,
    /// Atoms that atom introduction and elimination may use.
    pub atom_universe: AtomSet,
    pub candidate_perms: BTreeSet<Perm>,
    /// Middle terms tried by transitivity.
    pub candidate_terms: BTreeSet<Term>,
}

impl SearchBudget {
    /// A budget for `goal`: the atoms of the goal and of the axioms plus
    /// `extra_atoms` fresh ones, every product of at most `perm_len`
    /// transpositions over them, and the subterms of the goal together with
    /// their images under those permutations.
    pub fn for_goal(
        theory: &Theory,
        goal: &Judgement,
        max_depth: usize,
        extra_atoms: usize,
        perm_len: usize,
    ) -> SearchBudget {
        let mut atoms = goal.support();
        for (_, ax) in theory.axioms() {
            atoms.extend(ax.support());
        }
        let extra = fresh_tuple(extra_atoms, &atoms);
        atoms.extend(extra.atoms().iter().copied());

        let list: Vec<_> = atoms.iter().copied().collect();
        let mut swaps = Vec::new();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                swaps.push(Perm::swap(*a, *b));
            }
        }
        let mut perms: BTreeSet<Perm> = [Perm::identity()].into();
        let mut frontier = perms.clone();
        for _ in 0..perm_len {
            let mut next = BTreeSet::new();
            for p in &frontier {
                for s in &swaps {
                    let q = s.compose(p);
                    if perms.insert(q.clone()) {
                        next.insert(q);
                    }
                }
            }
            frontier = next;
        }

        let mut terms = BTreeSet::new();
        for t in [goal.lhs(), goal.rhs()] {
            for u in t.subterms() {
                for p in &perms {
                    terms.insert(u.object_act(p));
                }
            }
        }
        SearchBudget {
            max_depth,
            atom_universe: atoms,
            candidate_perms: perms,
            candidate_terms: terms,
        }
    }
}

/// Searches for a derivation of `goal` by iterative deepening.
pub fn bounded_search(
    theory: &Theory,
    goal: &Judgement,
    budget: &SearchBudget,
) -> Option<Derivation> {
    let mut s = Searcher {
        theory,
        budget,
        failed: HashMap::new(),
    };
    (1..=budget.max_depth).find_map(|d| s.prove(goal, d))
}

/// A rule together with the judgements its premises must conclude.
struct Step {
    rule: Rule,
    premises: Vec<Judgement>,
}

struct Searcher<'a> {
    theory: &'a Theory,
    budget: &'a SearchBudget,
    /// Goals known to have no derivation up to the recorded depth.
    failed: HashMap<Judgement, usize>,
}

impl Searcher<'_> {
    fn neol(&self) -> bool {
        self.theory.flavour == Flavour::Neol
    }

    fn prove(&mut self, goal: &Judgement, depth: usize) -> Option<Derivation> {
        if depth == 0 || self.failed.get(goal).is_some_and(|d| *d >= depth) {
            return None;
        }
        for step in self.steps(goal, depth) {
            if let Some(d) = self.attempt(step, depth) {
                if d.conclusion() == goal {
                    return Some(d);
                }
            }
        }
        self.failed.insert(goal.clone(), depth);
        None
    }

    fn attempt(&mut self, step: Step, depth: usize) -> Option<Derivation> {
        let mut premises = Vec::with_capacity(step.premises.len());
        for p in &step.premises {
            premises.push(self.prove(p, depth - 1)?);
        }
        Derivation::infer(self.theory, step.rule, premises).ok()
    }

    fn judgement(
        &self,
        env: &FreshnessEnv,
        fresh: &AtomSet,
        lhs: &Term,
        rhs: &Term,
        goal: &Judgement,
    ) -> Option<Judgement> {
        Judgement::new(
            &self.theory.sig,
            env.clone(),
            fresh.clone(),
            lhs.clone(),
            rhs.clone(),
            goal.sort().clone(),
        )
        .ok()
    }

    /// Candidate rule instances, cheapest first.
    fn steps(&self, goal: &Judgement, depth: usize) -> Vec<Step> {
        let mut out = Vec::new();
        let (fe, f, t, u) = (goal.env(), goal.fresh(), goal.lhs(), goal.rhs());
        let leaf = |rule| Step {
            rule,
            premises: Vec::new(),
        };

        for (name, ax) in self.theory.axioms() {
            if ax == goal {
                out.push(leaf(Rule::Axiom { name: name.clone() }));
            }
        }
        if f.is_empty() && t == u {
            out.push(leaf(Rule::Refl {
                env: fe.clone(),
                term: t.clone(),
                sort: goal.sort().clone(),
            }));
        }
        if let (Term::Susp(p, x), Term::Susp(q, y)) = (t, u) {
            if x == y && f.is_empty() {
                out.push(leaf(Rule::Susp {
                    left: p.clone(),
                    right: q.clone(),
                    var: x.clone(),
                    sort: goal.sort().clone(),
                }));
            }
            if !self.neol() && t == u {
                if let Some(b) = fe.get(x) {
                    out.push(leaf(Rule::FreshEquivar {
                        atoms: b.atoms.clone(),
                        perm: p.clone(),
                        var: x.clone(),
                        sort: goal.sort().clone(),
                    }));
                }
            }
        }
        if depth < 2 {
            return out;
        }

        for env in self.weaker_envs(goal) {
            if let Some(j) = self.judgement(&env, f, t, u, goal) {
                out.push(Step {
                    rule: Rule::Weak { env: fe.clone() },
                    premises: vec![j],
                });
            }
        }
        out.extend(self.congruence(goal));
        out.extend(self.axiom_instances(goal));
        if t != u {
            if let Some(j) = self.judgement(fe, f, u, t, goal) {
                out.push(Step {
                    rule: Rule::Symm,
                    premises: vec![j],
                });
            }
        }
        out.extend(self.atom_steps(goal));
        let splits: Vec<(AtomSet, AtomSet)> = if f.is_empty() {
            vec![(AtomSet::new(), AtomSet::new())]
        } else {
            vec![(f.clone(), AtomSet::new()), (AtomSet::new(), f.clone())]
        };
        let vars: BTreeSet<Var> = fe.vars().cloned().collect();
        for m in &self.budget.candidate_terms {
            if m == t || m == u || !m.vars().is_subset(&vars) {
                continue;
            }
            for (f1, f2) in &splits {
                let (Some(a), Some(b)) = (
                    self.judgement(fe, f1, t, m, goal),
                    self.judgement(fe, f2, m, u, goal),
                ) else {
                    continue;
                };
                out.push(Step {
                    rule: Rule::Trans,
                    premises: vec![a, b],
                });
            }
        }
        out
    }

    /// Environments strictly below the goal's: unused variables dropped,
    /// the exact environment of a suspension step, and axiom environments.
    fn weaker_envs(&self, goal: &Judgement) -> Vec<FreshnessEnv> {
        let fe = goal.env();
        let mut used = goal.lhs().vars();
        used.extend(goal.rhs().vars());
        let mut out = Vec::new();
        let mut restricted = FreshnessEnv::new();
        for (x, b) in fe.iter() {
            if used.contains(x) {
                restricted.insert(x.clone(), b.atoms.clone(), b.sort.clone());
            }
        }
        out.push(restricted);
        if let (Term::Susp(p, x), Term::Susp(q, y)) = (goal.lhs(), goal.rhs()) {
            if let (true, Some(b)) = (x == y, fe.get(x)) {
                out.push(FreshnessEnv::single(
                    x,
                    p.disagreement_set(q),
                    b.sort.clone(),
                ));
                if p == q {
                    out.push(FreshnessEnv::single(
                        x,
                        p.invert().act_set(goal.fresh()),
                        b.sort.clone(),
                    ));
                }
            }
        }
        for (_, ax) in self.theory.axioms() {
            if ax.lhs() == goal.lhs() && ax.rhs() == goal.rhs() && ax.fresh() == goal.fresh() {
                out.push(ax.env().clone());
            }
        }
        let mut seen = BTreeSet::new();
        out.retain(|e| e != fe && e.leq(fe) && seen.insert(e.clone()));
        out
    }

    /// Substitution into `op(x1, …, xn)` when both sides share the operation.
    fn congruence(&self, goal: &Judgement) -> Vec<Step> {
        let (Term::Op(o1, a1), Term::Op(o2, a2)) = (goal.lhs(), goal.rhs()) else {
            return Vec::new();
        };
        if o1 != o2 || a1.len() != a2.len() {
            return Vec::new();
        }
        let fresh = goal.fresh();
        if !fresh.is_disjoint(&o1.support()) {
            return Vec::new();
        }
        let vars = local_vars(&self.theory.sig, a1.len());
        let mut local = FreshnessEnv::new();
        for (x, s) in vars.iter().zip(o1.op_type().0) {
            local.insert(x.clone(), fresh.clone(), s.clone());
        }
        let pattern = Term::op(o1.clone(), vars.iter().map(Term::var).collect());
        let Ok(main) = Judgement::new(
            &self.theory.sig,
            local,
            fresh.clone(),
            pattern.clone(),
            pattern,
            goal.sort().clone(),
        ) else {
            return Vec::new();
        };
        let sigma: Substitution = vars.iter().cloned().zip(a1.iter().cloned()).collect();
        let sigma2: Substitution = vars.iter().cloned().zip(a2.iter().cloned()).collect();
        self.subst_step(goal, main, &sigma, &sigma2)
            .into_iter()
            .collect()
    }

    /// Substitution into an axiom whose sides match the goal.
    fn axiom_instances(&self, goal: &Judgement) -> Vec<Step> {
        let mut out = Vec::new();
        for (_, ax) in self.theory.axioms() {
            if ax.fresh() != goal.fresh() || ax.sort() != goal.sort() {
                continue;
            }
            let (mut sigma, mut sigma2) = (Substitution::new(), Substitution::new());
            if !matches(ax.lhs(), goal.lhs(), &mut sigma)
                || !matches(ax.rhs(), goal.rhs(), &mut sigma2)
            {
                continue;
            }
            let mut complete = true;
            for x in ax.env().vars() {
                match (sigma.get(x).cloned(), sigma2.get(x).cloned()) {
                    (Some(_), Some(_)) => {}
                    (Some(v), None) => {
                        sigma2.insert(x.clone(), v);
                    }
                    (None, Some(v)) => {
                        sigma.insert(x.clone(), v);
                    }
                    (None, None) => complete = false,
                }
            }
            if complete {
                out.extend(self.subst_step(goal, ax.clone(), &sigma, &sigma2));
            }
        }
        out
    }

    fn subst_step(
        &self,
        goal: &Judgement,
        main: Judgement,
        sigma: &Substitution,
        sigma2: &Substitution,
    ) -> Option<Step> {
        let target = goal.env();
        let mut eqs = Vec::new();
        let mut freshes = Vec::new();
        let mut tuples: BTreeMap<Var, TuplePair> = BTreeMap::new();
        for (x, b) in main.env().iter() {
            let (l, r) = (sigma.get(x)?, sigma2.get(x)?);
            let hyp_fresh = if self.neol() {
                AtomSet::new()
            } else {
                b.atoms.clone()
            };
            eqs.push(
                Judgement::new(
                    &self.theory.sig,
                    target.clone(),
                    hyp_fresh,
                    l.clone(),
                    r.clone(),
                    b.sort.clone(),
                )
                .ok()?,
            );
            if self.neol() {
                let order = AtomTuple::sorted(&b.atoms);
                let mut avoid = target.support();
                avoid.extend(b.atoms.iter().copied());
                avoid.extend(l.support());
                let fresh = fresh_tuple(order.len(), &avoid);
                let g = gen_transposition(&order, &fresh).ok()?;
                freshes.push(
                    Judgement::equation(
                        &self.theory.sig,
                        target.extend(&fresh.underlying()),
                        l.clone(),
                        l.object_act(&g),
                        b.sort.clone(),
                    )
                    .ok()?,
                );
                tuples.insert(x.clone(), (order, fresh));
            }
        }
        eqs.extend(freshes);
        eqs.push(main);
        Some(Step {
            rule: Rule::Subst {
                env: target.clone(),
                tuples,
            },
            premises: eqs,
        })
    }

    /// Atom elimination of one unused atom from the universe, and (in the
    /// freshness-aware logic) atom introduction of the largest possible set.
    fn atom_steps(&self, goal: &Judgement) -> Vec<Step> {
        let fe = goal.env();
        let mut mentioned = goal.fresh().clone();
        mentioned.extend(goal.lhs().support());
        mentioned.extend(goal.rhs().support());
        let mut out = Vec::new();
        let env_atoms = fe.support();
        for a in &self.budget.atom_universe {
            if mentioned.contains(a) || env_atoms.contains(a) {
                continue;
            }
            let one: AtomSet = [*a].into();
            if let Some(j) =
                self.judgement(&fe.extend(&one), goal.fresh(), goal.lhs(), goal.rhs(), goal)
            {
                out.push(Step {
                    rule: Rule::AtmElim { atoms: one },
                    premises: vec![j],
                });
            }
        }
        if !self.neol() && !fe.is_empty() {
            let mut common = goal.fresh().clone();
            for (_, b) in fe.iter() {
                common = common.intersection(&b.atoms).copied().collect();
            }
            let mut terms = goal.lhs().support();
            terms.extend(goal.rhs().support());
            let intro: AtomSet = common.difference(&terms).copied().collect();
            if !intro.is_empty() {
                let rest: AtomSet = goal.fresh().difference(&intro).copied().collect();
                if let Some(j) =
                    self.judgement(&fe.shrink(&intro), &rest, goal.lhs(), goal.rhs(), goal)
                {
                    out.push(Step {
                        rule: Rule::AtmIntro { atoms: intro },
                        premises: vec![j],
                    });
                }
            }
        }
        out
    }
}

/// First-order matching that inverts suspended permutations:
/// `π x` matches `t` by binding `x` to `π⁻¹ ∗ t`.
fn matches(pattern: &Term, t: &Term, sigma: &mut Substitution) -> bool {
    match (pattern, t) {
        (Term::Susp(p, x), _) => {
            let image = t.object_act(&p.invert());
            match sigma.get(x) {
                Some(v) => *v == image,
                None => {
                    sigma.insert(x.clone(), image);
                    true
                }
            }
        }
        (Term::Op(o1, a1), Term::Op(o2, a2)) => {
            o1 == o2 && a1.len() == a2.len() && a1.iter().zip(a2).all(|(p, u)| matches(p, u, sigma))
        }
        _ => false,
    }
}
