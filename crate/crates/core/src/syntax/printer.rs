use std::fmt::Write;

use super::{Script, SourceFile};
use crate::env::Theory;
use crate::kernel::Rule;
use crate::perm::DisplaySet;
use crate::signature::Signature;

pub fn print_signature(sig: &Signature) -> String {
    let mut out = String::new();
    for s in sig.sorts() {
        writeln!(out, "sort {s};").unwrap();
    }
    for f in sig.families() {
        write!(out, "op {}", f.name).unwrap();
        if f.atom_arity > 0 {
            write!(out, "[{}]", f.atom_arity).unwrap();
        }
        let args: Vec<&str> = f.arg_sorts.iter().map(|s| s.as_str()).collect();
        writeln!(out, " : ({}) -> {};", args.join(", "), f.result).unwrap();
    }
    out
}

pub fn print_theory(th: &Theory) -> String {
    let mut out = format!("theory {} {} {{\n", th.name, th.flavour);
    for (name, j) in th.axioms() {
        writeln!(out, "  axiom {name} : {j};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn rule_head(rule: &Rule) -> String {
    match rule {
        Rule::Axiom { name } => format!("axiom({name})"),
        Rule::Refl { env, term, sort } => format!("refl{{{env} |- {term} : {sort}}}"),
        Rule::Symm => "symm".into(),
        Rule::Trans => "trans".into(),
        Rule::Weak { env } => format!("weak{{{env}}}"),
        Rule::Subst { env, tuples } => {
            let mut s = format!("subst{{{env}");
            for (i, (x, (order, fresh))) in tuples.iter().enumerate() {
                s.push_str(if i == 0 { "; " } else { ", " });
                write!(s, "{x} : {order} -> {fresh}").unwrap();
            }
            s.push('}');
            s
        }
        Rule::AtmIntro { atoms } => format!("atm-intro{}", DisplaySet(atoms)),
        Rule::AtmElim { atoms } => format!("atm-elim{}", DisplaySet(atoms)),
        Rule::FreshEquivar {
            atoms,
            perm,
            var,
            sort,
        } => {
            let t = crate::term::Term::susp(perm.clone(), var);
            format!("#-equivar{{{}; {t} : {sort}}}", DisplaySet(atoms))
        }
        Rule::Susp {
            left,
            right,
            var,
            sort,
        } => {
            let l = crate::term::Term::susp(left.clone(), var);
            let r = crate::term::Term::susp(right.clone(), var);
            format!("susp{{{l} ~ {r} : {sort}}}")
        }
    }
}

fn has_premise_list(rule: &Rule) -> bool {
    !matches!(
        rule,
        Rule::Axiom { .. } | Rule::Refl { .. } | Rule::FreshEquivar { .. } | Rule::Susp { .. }
    )
}

fn script_into(s: &Script, indent: usize, out: &mut String) {
    out.push_str(&rule_head(&s.rule));
    if !has_premise_list(&s.rule) {
        return;
    }
    out.push('(');
    for (i, p) in s.premises.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('\n');
        out.push_str(&"  ".repeat(indent + 1));
        script_into(p, indent + 1, out);
    }
    if !s.premises.is_empty() {
        out.push('\n');
        out.push_str(&"  ".repeat(indent));
    }
    out.push(')');
}

/// One premise per line, indented by depth.
pub fn print_script(s: &Script) -> String {
    let mut out = String::new();
    script_into(s, 0, &mut out);
    out
}

pub fn print_file(f: &SourceFile) -> String {
    let mut out = print_signature(&f.sig);
    for th in &f.theories {
        out.push('\n');
        out.push_str(&print_theory(th));
    }
    if !f.judgements.is_empty() {
        out.push('\n');
    }
    for (name, j) in &f.judgements {
        writeln!(out, "judgement {name} : {j};").unwrap();
    }
    for d in &f.derivations {
        let mut body = String::new();
        script_into(&d.script, 1, &mut body);
        write!(
            out,
            "\nderivation {} in {} : {} :=\n  {body};\n",
            d.name, d.theory, d.goal
        )
        .unwrap();
    }
    out
}
