//! Compiling freshness-aware theories into equation-only ones.

use std::collections::BTreeSet;

use crate::env::{Flavour, Judgement, Theory};
use crate::kernel::build::{canonical_pair, swap_equation};
use crate::perm::{Atom, AtomSet, AtomTuple};

pub use crate::perm::fresh_tuple;

/// Hands out atoms that avoid a growing set, least atoms first.
#[derive(Debug, Clone, Default)]
pub struct FreshAllocator {
    avoid: AtomSet,
}

impl FreshAllocator {
    pub fn new(avoid: AtomSet) -> FreshAllocator {
        FreshAllocator { avoid }
    }

    pub fn avoid(&mut self, atoms: impl IntoIterator<Item = Atom>) -> &mut Self {
        self.avoid.extend(atoms);
        self
    }

    pub fn avoid_judgement(&mut self, j: &Judgement) -> &mut Self {
        self.avoid(j.support())
    }

    /// `n` new atoms, which are then avoided by later calls.
    pub fn take(&mut self, n: usize) -> AtomTuple {
        let out = fresh_tuple(n, &self.avoid);
        self.avoid.extend(out.atoms().iter().copied());
        out
    }
}

/// Replaces each axiom `fe ⊢ ā # t ≈ t' : s` by `fe ⊢ t ≈ t' : s` (keeping
/// its name) and, when `ā` is non-empty, `fe^{#a'} ⊢ t ≈ (a a') ∗ t : s`
/// (named `<name>_fresh`).
pub fn compile_theory(theory: &Theory) -> Theory {
    let mut taken: BTreeSet<String> = theory.axioms().iter().map(|(n, _)| n.clone()).collect();
    let mut out = Theory::new(&theory.name, theory.sig.clone(), Flavour::Neol);
    for (name, j) in theory.axioms() {
        let eq = Judgement::equation(
            &theory.sig,
            j.env().clone(),
            j.lhs().clone(),
            j.rhs().clone(),
            j.sort().clone(),
        )
        .expect("components of a well-formed judgement");
        out.add_axiom(name, eq)
            .expect("names are unique and the axiom is an equation");
        if j.fresh().is_empty() {
            continue;
        }
        let pair = canonical_pair(j.env(), j.fresh(), j.lhs());
        let swap = swap_equation(&theory.sig, j.env(), &pair, j.lhs(), j.sort())
            .expect("fresh tuple is disjoint from the ordering");
        let mut fresh_name = format!("{name}_fresh");
        let mut k = 2;
        while taken.contains(&fresh_name) {
            fresh_name = format!("{name}_fresh{k}");
            k += 1;
        }
        taken.insert(fresh_name.clone());
        out.add_axiom(&fresh_name, swap)
            .expect("name was just reserved");
    }
    out
}
