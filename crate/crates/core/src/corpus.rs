//! The untyped λ-calculus with αβη axioms, shipped as a sample corpus.

use crate::compile::compile_theory;
use crate::env::{FreshnessEnv, Theory};
use crate::kernel::build::{canonical_pair, eq_to_fresh, fresh_to_eq, BuildError};
use crate::kernel::translate::translate_derivation;
use crate::kernel::{Derivation, Rule};
use crate::perm::{Atom, AtomSet};
use crate::signature::{Sort, Var};
use crate::syntax::{parse_file, DerivationItem, Script, SourceFile};
use crate::term::Term;

/// Signature and axioms, in the text format.
pub const LAMBDA_THEORY_SRC: &str = "\
sort tm;
op var[1] : () -> tm;
op lam[1] : (tm) -> tm;
op app : (tm, tm) -> tm;

theory lambda nel {
  axiom alpha : (x : tm) |- {a} # lam[a] x : tm;
  axiom beta1 : ({a} # x : tm, y : tm) |- app(lam[a] x, y) ~ x : tm;
  axiom beta2 : (y : tm) |- app(lam[a] var[a], y) ~ y : tm;
  axiom beta3 : (x : tm, {b} # y : tm) |- app(lam[a] lam[b] x, y) ~ lam[b] app(lam[a] x, y) : tm;
  axiom beta4 : (x1 : tm, x2 : tm, y : tm) |- app(lam[a] app(x1, x2), y) ~ app(app(lam[a] x1, y), app(lam[a] x2, y)) : tm;
  axiom beta5 : ({b} # x : tm) |- app(lam[a] x, var[b]) ~ (a b) x : tm;
  axiom eta : ({a} # x : tm) |- lam[a] app(x, var[a]) ~ x : tm;
}
";

pub fn lambda_source() -> SourceFile {
    parse_file(LAMBDA_THEORY_SRC).expect("built-in corpus parses")
}

/// The αβη theory over `var`, `lam` and `app`.
pub fn lambda_theory() -> Theory {
    lambda_source().theories.remove(0)
}

fn item(name: &str, theory: &Theory, d: &Derivation) -> DerivationItem {
    DerivationItem {
        name: name.to_string(),
        theory: theory.name.clone(),
        goal: d.conclusion().clone(),
        script: Script::from_derivation(d),
        pos: Default::default(),
    }
}

/// Sample freshness-aware derivations over [`lambda_theory`], by name.
pub fn lambda_derivations(th: &Theory) -> Result<Vec<(String, Derivation)>, BuildError> {
    let sig = &th.sig;
    let tm = Sort::new("tm");
    let (a, b) = (Atom::from_index(0), Atom::from_index(1));
    let infer = |rule, premises| Derivation::infer(th, rule, premises).map_err(BuildError::from);

    let alpha = infer(
        Rule::Axiom {
            name: "alpha".into(),
        },
        vec![],
    )?;
    let alpha_swap = fresh_to_eq(th, alpha.clone())?;
    let x_env = FreshnessEnv::single(&Var::new("x"), AtomSet::new(), tm.clone());
    let pair = canonical_pair(&x_env, &[a].into(), alpha.conclusion().lhs());
    let alpha_back = eq_to_fresh(th, &x_env, &pair, alpha_swap.clone())?;

    // β2 with y instantiated to lam[b] z.
    let z = Var::new("z");
    let z_env = FreshnessEnv::single(&z, AtomSet::new(), tm.clone());
    let lam_b = sig.op("lam", &[b]).expect("signature declares lam");
    let image = Term::op(lam_b, vec![Term::var(&z)]);
    let hyp = infer(
        Rule::Refl {
            env: z_env.clone(),
            term: image,
            sort: tm.clone(),
        },
        vec![],
    )?;
    let beta2 = infer(
        Rule::Axiom {
            name: "beta2".into(),
        },
        vec![],
    )?;
    let beta2_inst = infer(
        Rule::Subst {
            env: z_env,
            tuples: Default::default(),
        },
        vec![hyp, beta2],
    )?;

    // η read backwards, then forwards again.
    let eta = infer(Rule::Axiom { name: "eta".into() }, vec![])?;
    let eta_back = infer(Rule::Symm, vec![eta.clone()])?;
    let eta_loop = infer(Rule::Trans, vec![eta_back.clone(), eta])?;

    Ok(vec![
        ("alpha_swap".into(), alpha_swap),
        ("alpha_back".into(), alpha_back),
        ("beta2_instance".into(), beta2_inst),
        ("eta_symm".into(), eta_back),
        ("eta_loop".into(), eta_loop),
    ])
}

/// The theory and its sample derivations.
pub fn lambda_corpus() -> SourceFile {
    let mut file = lambda_source();
    let th = file.theories[0].clone();
    for (name, d) in lambda_derivations(&th).expect("sample derivations build") {
        file.derivations.push(item(&name, &th, &d));
    }
    file
}

/// The compiled theory and, for each sample derivation, the pair of
/// equation-only derivations it translates to (suffixes `_eq` and `_swap`).
pub fn lambda_neol_corpus() -> SourceFile {
    let th = lambda_theory();
    let compiled = compile_theory(&th);
    let mut file = SourceFile::new(th.sig.clone());
    for (name, d) in lambda_derivations(&th).expect("sample derivations build") {
        let (d1, d2) = translate_derivation(&th, &compiled, &d).expect("samples translate");
        file.derivations
            .push(item(&format!("{name}_eq"), &compiled, &d1));
        file.derivations
            .push(item(&format!("{name}_swap"), &compiled, &d2));
    }
    file.theories.push(compiled);
    file
}
