//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use nel_kernel::empty::{certify_judgement, decide_judgement};
use nel_kernel::env::{FreshnessEnv, Judgement, Theory};
use nel_kernel::kernel::{Derivation, Rule};
use nel_kernel::perm::{Atom, AtomSet, Perm};
use nel_kernel::signature::{Signature, Sort, Var};
use nel_kernel::term::Term;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn at(i: usize) -> Atom {
    Atom::from_index(i as u32)
}

pub fn lam_sig() -> Arc<Signature> {
    Arc::new(Signature::lambda())
}

pub fn tm() -> Sort {
    Sort::new("tm")
}

pub fn vars(n: usize) -> Vec<Var> {
    ["x", "y", "z"][..n].iter().map(|s| Var::new(s)).collect()
}

/// A product of up to `max_swaps` random transpositions over the first
/// `n_atoms` atoms.
pub fn rand_perm(rng: &mut impl Rng, n_atoms: usize, max_swaps: usize) -> Perm {
    let mut p = Perm::identity();
    for _ in 0..rng.gen_range(0..=max_swaps) {
        let a = rng.gen_range(0..n_atoms);
        let b = rng.gen_range(0..n_atoms);
        if a != b {
            p = Perm::swap(at(a), at(b)).compose(&p);
        }
    }
    p
}

pub fn rand_atoms(rng: &mut impl Rng, n_atoms: usize, p: f64) -> AtomSet {
    (0..n_atoms).filter(|_| rng.gen_bool(p)).map(at).collect()
}

/// A random λ-term of depth at most `depth` over `vars`.
pub fn rand_term(
    rng: &mut impl Rng,
    sig: &Signature,
    vars: &[Var],
    n_atoms: usize,
    depth: usize,
) -> Term {
    let leaf = depth <= 1 || rng.gen_bool(0.3);
    if leaf {
        if vars.is_empty() || rng.gen_bool(0.15) {
            let a = at(rng.gen_range(0..n_atoms));
            return Term::op(sig.op("var", &[a]).unwrap(), vec![]);
        }
        let x = vars.choose(rng).unwrap();
        return Term::susp(rand_perm(rng, n_atoms, 2), x);
    }
    if rng.gen_bool(0.5) {
        let a = at(rng.gen_range(0..n_atoms));
        let body = rand_term(rng, sig, vars, n_atoms, depth - 1);
        Term::op(sig.op("lam", &[a]).unwrap(), vec![body])
    } else {
        let l = rand_term(rng, sig, vars, n_atoms, depth - 1);
        let r = rand_term(rng, sig, vars, n_atoms, depth - 1);
        Term::op(sig.op("app", &[]).unwrap(), vec![l, r])
    }
}

pub fn rand_env(rng: &mut impl Rng, vars: &[Var], n_atoms: usize, p: f64) -> FreshnessEnv {
    let mut fe = FreshnessEnv::new();
    for x in vars {
        fe.insert(x.clone(), rand_atoms(rng, n_atoms, p), tm());
    }
    fe
}

/// Multiplies each suspension by a random permutation: inside the variable's
/// freshness set when `inside`, over all atoms otherwise.
pub fn perturb(rng: &mut impl Rng, fe: &FreshnessEnv, t: &Term, inside: bool) -> Term {
    match t {
        Term::Susp(p, x) => {
            let pool: Vec<Atom> = if inside {
                fe.get(x).unwrap().atoms.iter().copied().collect()
            } else {
                (0..4).map(at).collect()
            };
            let r = match (pool.choose(rng), pool.choose(rng)) {
                (Some(a), Some(b)) if a != b && rng.gen_bool(0.7) => Perm::swap(*a, *b),
                _ => Perm::identity(),
            };
            Term::susp(p.compose(&r), x)
        }
        Term::Op(op, args) => Term::op(
            op.clone(),
            args.iter().map(|u| perturb(rng, fe, u, inside)).collect(),
        ),
    }
}

// ---------------------------------------------------------------------------
// Oracles written without the library's own helpers.

/// Least atoms outside `avoid`, by scanning indices upwards.
pub fn oracle_fresh(n: usize, avoid: &AtomSet) -> Vec<Atom> {
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < n {
        if !avoid.contains(&at(i)) {
            out.push(at(i));
        }
        i += 1;
    }
    out
}

/// The product of `(src_i dst_i)` as an explicit map on atoms.
pub fn oracle_swap_map(src: &[Atom], dst: &[Atom]) -> BTreeMap<Atom, Atom> {
    let mut m = BTreeMap::new();
    for (a, b) in src.iter().zip(dst) {
        m.insert(*a, *b);
        m.insert(*b, *a);
    }
    m
}

/// `t` with every atom renamed by an explicit map, pushed into suspensions
/// from the left. Written against the term structure directly.
pub fn oracle_object_act(sig: &Signature, m: &BTreeMap<Atom, Atom>, t: &Term) -> Term {
    let f = |a: Atom| *m.get(&a).unwrap_or(&a);
    match t {
        Term::Susp(p, x) => {
            let mut dom: BTreeSet<Atom> = p.support();
            dom.extend(m.keys().copied());
            let pairs = dom.into_iter().map(|a| (a, f(p.apply(a))));
            Term::susp(Perm::from_pairs(pairs).unwrap(), x)
        }
        Term::Op(op, args) => {
            let params: Vec<Atom> = op.params().atoms().iter().map(|a| f(*a)).collect();
            Term::op(
                sig.op(op.name(), &params).unwrap(),
                args.iter().map(|u| oracle_object_act(sig, m, u)).collect(),
            )
        }
    }
}

/// All atoms occurring anywhere in a term: suspension supports and
/// operation parameters.
pub fn oracle_term_atoms(t: &Term) -> AtomSet {
    match t {
        Term::Susp(p, _) => p.iter().map(|(a, _)| a).collect(),
        Term::Op(op, args) => {
            let mut s: AtomSet = op.params().atoms().iter().copied().collect();
            for u in args {
                s.extend(oracle_term_atoms(u));
            }
            s
        }
    }
}

pub fn oracle_env_atoms(fe: &FreshnessEnv) -> AtomSet {
    fe.iter()
        .flat_map(|(_, b)| b.atoms.iter().copied())
        .collect()
}

/// The swapping equation for `fe ⊢ atoms # t : s`, computed independently.
pub fn oracle_swap_goal(
    sig: &Arc<Signature>,
    fe: &FreshnessEnv,
    atoms: &AtomSet,
    t: &Term,
    s: &Sort,
) -> Judgement {
    let order: Vec<Atom> = atoms.iter().copied().collect();
    let mut avoid = oracle_env_atoms(fe);
    avoid.extend(atoms.iter().copied());
    avoid.extend(oracle_term_atoms(t));
    let fresh = oracle_fresh(order.len(), &avoid);
    let mut fe2 = FreshnessEnv::new();
    for (x, b) in fe.iter() {
        let mut a = b.atoms.clone();
        a.extend(fresh.iter().copied());
        fe2.insert(x.clone(), a, b.sort.clone());
    }
    let m = oracle_swap_map(&order, &fresh);
    Judgement::equation(
        sig,
        fe2,
        t.clone(),
        oracle_object_act(sig, &m, t),
        s.clone(),
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Random freshness-aware derivations by forward rule application.

pub struct DerivationGen<'a> {
    pub th: &'a Theory,
    pub rng: ChaCha8Rng,
    pub n_atoms: usize,
    vars: Vec<Var>,
}

impl<'a> DerivationGen<'a> {
    pub fn new(th: &'a Theory, seed: u64) -> DerivationGen<'a> {
        DerivationGen {
            th,
            rng: rng(seed),
            n_atoms: 4,
            vars: vars(3),
        }
    }

    fn infer(&self, rule: Rule, premises: Vec<Derivation>) -> Option<Derivation> {
        Derivation::infer(self.th, rule, premises).ok()
    }

    fn some_vars(&mut self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .vars
            .iter()
            .filter(|_| self.rng.gen_bool(0.6))
            .cloned()
            .collect();
        if vs.is_empty() {
            vs.push(self.vars.choose(&mut self.rng).unwrap().clone());
        }
        vs
    }

    fn leaf(&mut self) -> Derivation {
        let n = self.n_atoms;
        loop {
            let out = match self.rng.gen_range(0..4) {
                0 => {
                    let names: Vec<String> =
                        self.th.axioms().iter().map(|(n, _)| n.clone()).collect();
                    let name = names.choose(&mut self.rng).unwrap().clone();
                    self.infer(Rule::Axiom { name }, vec![])
                }
                1 => {
                    let vs = self.some_vars();
                    let env = rand_env(&mut self.rng, &vs, n, 0.3);
                    let term = rand_term(&mut self.rng, &self.th.sig, &vs, n, 3);
                    self.infer(
                        Rule::Refl {
                            env,
                            term,
                            sort: tm(),
                        },
                        vec![],
                    )
                }
                2 => {
                    let left = rand_perm(&mut self.rng, n, 2);
                    let right = rand_perm(&mut self.rng, n, 2);
                    let var = self.vars.choose(&mut self.rng).unwrap().clone();
                    self.infer(
                        Rule::Susp {
                            left,
                            right,
                            var,
                            sort: tm(),
                        },
                        vec![],
                    )
                }
                _ => {
                    let atoms = rand_atoms(&mut self.rng, n, 0.4);
                    let perm = rand_perm(&mut self.rng, n, 2);
                    let var = self.vars.choose(&mut self.rng).unwrap().clone();
                    self.infer(
                        Rule::FreshEquivar {
                            atoms,
                            perm,
                            var,
                            sort: tm(),
                        },
                        vec![],
                    )
                }
            };
            if let Some(d) = out {
                return d;
            }
        }
    }

    fn mentioned(j: &Judgement) -> AtomSet {
        let mut m = j.fresh().clone();
        m.extend(j.lhs().support());
        m.extend(j.rhs().support());
        m
    }

    /// A derivation whose rule nesting is at most `depth` (hypotheses of
    /// substitutions are certified in the empty fragment and count as leaves).
    pub fn derivation(&mut self, depth: usize) -> Derivation {
        if depth <= 1 || self.rng.gen_bool(0.15) {
            return self.leaf();
        }
        for _ in 0..20 {
            if let Some(d) = self.step(depth) {
                return d;
            }
        }
        self.leaf()
    }

    fn step(&mut self, depth: usize) -> Option<Derivation> {
        let n = self.n_atoms;
        match self.rng.gen_range(0..7) {
            0 => {
                let d = self.derivation(depth - 1);
                self.infer(Rule::Symm, vec![d])
            }
            1 => {
                let d = self.derivation(depth.saturating_sub(2).max(1));
                if self.rng.gen_bool(0.5) {
                    let s = self.infer(Rule::Symm, vec![d.clone()])?;
                    self.infer(Rule::Trans, vec![d, s])
                } else {
                    // Join with a freshness proof for the right-hand side,
                    // overlapping the existing set at random.
                    let j = d.conclusion().clone();
                    let g: AtomSet = rand_atoms(&mut self.rng, n, 0.4)
                        .difference(&j.rhs().support())
                        .copied()
                        .collect();
                    let env = j.env().extend(&g);
                    let left = if &env == j.env() {
                        d
                    } else {
                        self.infer(Rule::Weak { env: env.clone() }, vec![d])?
                    };
                    let refl = self.infer(
                        Rule::Refl {
                            env: j.env().clone(),
                            term: j.rhs().clone(),
                            sort: j.sort().clone(),
                        },
                        vec![],
                    )?;
                    let right = if g.is_empty() {
                        refl
                    } else {
                        self.infer(Rule::AtmIntro { atoms: g }, vec![refl])?
                    };
                    self.infer(Rule::Trans, vec![left, right])
                }
            }
            2 => {
                let d = self.derivation(depth - 1);
                let mut env = d.conclusion().env().clone();
                let x = self.vars.choose(&mut self.rng).unwrap().clone();
                let extra = rand_atoms(&mut self.rng, n, 0.3);
                let atoms = match env.get(&x) {
                    Some(b) => b.atoms.union(&extra).copied().collect(),
                    None => extra,
                };
                env.insert(x, atoms, tm());
                self.infer(Rule::Weak { env }, vec![d])
            }
            3 => {
                let d = self.derivation(depth - 1);
                let free: AtomSet = rand_atoms(&mut self.rng, n + 1, 0.4)
                    .difference(&Self::mentioned(d.conclusion()))
                    .copied()
                    .collect();
                if free.is_empty() {
                    return None;
                }
                self.infer(Rule::AtmIntro { atoms: free }, vec![d])
            }
            4 => {
                let d = self.derivation(depth.saturating_sub(2).max(1));
                let j = d.conclusion().clone();
                let free: AtomSet = rand_atoms(&mut self.rng, n + 1, 0.4)
                    .difference(&Self::mentioned(&j))
                    .copied()
                    .collect();
                if free.is_empty() {
                    return None;
                }
                let env = j.env().extend(&free);
                let widened = if &env == j.env() {
                    d
                } else {
                    self.infer(Rule::Weak { env }, vec![d])?
                };
                self.infer(Rule::AtmElim { atoms: free }, vec![widened])
            }
            _ => self.subst(depth),
        }
    }

    fn subst(&mut self, depth: usize) -> Option<Derivation> {
        let n = self.n_atoms;
        let main = self.derivation(depth - 1);
        let source = main.conclusion().env().clone();
        let target_vars = self.some_vars();
        let mut images = Vec::new();
        let mut needed: BTreeMap<Var, AtomSet> = BTreeMap::new();
        for (x, b) in source.iter() {
            let mut t = rand_term(&mut self.rng, &self.th.sig, &target_vars, n, 2);
            if !need(&b.atoms, &t, &mut needed.clone()) {
                t = Term::susp(
                    rand_perm(&mut self.rng, n, 1),
                    target_vars.choose(&mut self.rng).unwrap(),
                );
            }
            need(&b.atoms, &t, &mut needed);
            images.push((x.clone(), b.atoms.clone(), t));
        }
        let mut target = FreshnessEnv::new();
        for y in &target_vars {
            let mut atoms = rand_atoms(&mut self.rng, n, 0.2);
            atoms.extend(needed.get(y).cloned().unwrap_or_default());
            target.insert(y.clone(), atoms, tm());
        }
        let mut hyps = Vec::new();
        for (_, atoms, t) in images {
            let j = Judgement::new(&self.th.sig, target.clone(), atoms, t.clone(), t, tm()).ok()?;
            if !decide_judgement(&j) {
                return None;
            }
            hyps.push(certify_judgement(self.th, &j).ok()?);
        }
        hyps.push(main);
        self.infer(
            Rule::Subst {
                env: target,
                tuples: Default::default(),
            },
            hyps,
        )
    }
}

/// Records the binding atoms that make `atoms` fresh for `t`; false when an
/// operation parameter is among them.
fn need(atoms: &AtomSet, t: &Term, out: &mut BTreeMap<Var, AtomSet>) -> bool {
    match t {
        Term::Susp(p, x) => {
            out.entry(x.clone())
                .or_default()
                .extend(p.invert().act_set(atoms));
            true
        }
        Term::Op(op, args) => {
            op.support().is_disjoint(atoms) && args.iter().all(|u| need(atoms, u, out))
        }
    }
}
