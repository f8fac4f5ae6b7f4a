use std::collections::BTreeMap;
use std::sync::Arc;

use super::lexer::{lex, Tok};
use super::{DerivationItem, Pos, Script, SourceFile, SyntaxError};
use crate::env::{Flavour, FreshnessEnv, Judgement, Theory};
use crate::kernel::Rule;
use crate::perm::{Atom, AtomSet, AtomTuple, Perm};
use crate::signature::{Signature, Sort, Var};
use crate::term::Term;

type Res<T> = Result<T, SyntaxError>;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    sig: Arc<Signature>,
}

impl Parser {
    fn new(src: &str, sig: Arc<Signature>) -> Res<Parser> {
        Ok(Parser {
            toks: lex(src)?,
            i: 0,
            sig,
        })
    }

    fn peek(&self) -> &Tok {
        self.peek_at(0)
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i.min(self.toks.len() - 1)].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek().clone();
        if self.i < self.toks.len() - 1 {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Res<T> {
        Err(SyntaxError::new(self.pos(), msg))
    }

    fn unexpected<T>(&self, wanted: &str) -> Res<T> {
        self.err(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Res<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.unexpected(&t.describe())
        }
    }

    fn ident(&mut self, wanted: &str) -> Res<String> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(wanted),
        }
    }

    fn keyword(&mut self, kw: &str) -> Res<()> {
        if matches!(self.peek(), Tok::Ident(s) if s == kw) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn finish(&mut self) -> Res<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    fn is_family(&self, name: &str) -> bool {
        self.sig.family(name).is_some()
    }

    fn atom(&mut self) -> Res<Atom> {
        let pos = self.pos();
        let name = self.ident("an atom")?;
        Atom::parse(&name).ok_or_else(|| SyntaxError::new(pos, format!("`{name}` is not an atom")))
    }

    /// `{a b}`; commas between atoms are optional.
    fn atom_set(&mut self) -> Res<AtomSet> {
        self.expect(Tok::LBrace)?;
        let mut out = AtomSet::new();
        while !self.eat(&Tok::RBrace) {
            out.insert(self.atom()?);
            self.eat(&Tok::Comma);
        }
        Ok(out)
    }

    /// `[a, b]`
    fn atom_list(&mut self) -> Res<Vec<Atom>> {
        self.expect(Tok::LBrack)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrack) {
            return Ok(out);
        }
        loop {
            out.push(self.atom()?);
            if self.eat(&Tok::RBrack) {
                return Ok(out);
            }
            self.expect(Tok::Comma)?;
        }
    }

    fn atom_tuple(&mut self) -> Res<AtomTuple> {
        let pos = self.pos();
        let atoms = self.atom_list()?;
        AtomTuple::new(atoms).map_err(|e| SyntaxError::new(pos, e.to_string()))
    }

    /// A freshness set before `#`: `{a b} #` or the shorthand `a #`.
    fn fresh_prefix(&mut self) -> Res<Option<AtomSet>> {
        match (self.peek(), self.peek_at(1)) {
            (Tok::LBrace, _) => {
                let set = self.atom_set()?;
                self.expect(Tok::Hash)?;
                Ok(Some(set))
            }
            (Tok::Ident(_), Tok::Hash) => {
                let a = self.atom()?;
                self.bump();
                Ok(Some([a].into()))
            }
            _ => Ok(None),
        }
    }

    /// Whether a cycle `(a b ...)` starts at the cursor: at least two atoms,
    /// none of them an operation name.
    fn at_cycle(&self) -> bool {
        if *self.peek() != Tok::LParen {
            return false;
        }
        let mut k = 1;
        while let Tok::Ident(s) = self.peek_at(k) {
            if Atom::parse(s).is_none() || self.is_family(s) {
                return false;
            }
            k += 1;
        }
        k >= 3 && *self.peek_at(k) == Tok::RParen
    }

    /// Juxtaposed cycles, read as a composition (rightmost applied first).
    fn perm(&mut self) -> Res<Perm> {
        let mut p = Perm::identity();
        while self.at_cycle() {
            let pos = self.pos();
            self.bump();
            let mut atoms = Vec::new();
            while !self.eat(&Tok::RParen) {
                atoms.push(self.atom()?);
            }
            let c = Perm::cycle(&atoms).map_err(|e| SyntaxError::new(pos, e.to_string()))?;
            p = p.compose(&c);
        }
        Ok(p)
    }

    fn var(&mut self) -> Res<Var> {
        let pos = self.pos();
        let name = self.ident("a variable")?;
        if self.is_family(&name) {
            return Err(SyntaxError::new(
                pos,
                format!("`{name}` is an operation, not a variable"),
            ));
        }
        Ok(Var::new(&name))
    }

    fn term(&mut self) -> Res<Term> {
        if self.at_cycle() {
            let p = self.perm()?;
            let x = self.var()?;
            return Ok(Term::susp(p, &x));
        }
        if self.eat(&Tok::LParen) {
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        let pos = self.pos();
        let name = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.unexpected("a term"),
        };
        let Some(family) = self.sig.family(&name).cloned() else {
            let x = self.var()?;
            return Ok(Term::var(&x));
        };
        self.bump();
        let params = if family.atom_arity > 0 {
            self.atom_list()?
        } else {
            Vec::new()
        };
        let op = self
            .sig
            .op(&name, &params)
            .map_err(|e| SyntaxError::new(pos, e.to_string()))?;
        let args = match family.arg_sorts.len() {
            0 => Vec::new(),
            1 => vec![self.term()?],
            _ => {
                self.expect(Tok::LParen)?;
                let mut args = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen)?;
                args
            }
        };
        if args.len() != family.arg_sorts.len() {
            return Err(SyntaxError::new(
                pos,
                format!(
                    "`{name}` takes {} argument(s), got {}",
                    family.arg_sorts.len(),
                    args.len()
                ),
            ));
        }
        Ok(Term::op(op, args))
    }

    fn suspension(&mut self) -> Res<(Perm, Var)> {
        let pos = self.pos();
        match self.term()? {
            Term::Susp(p, x) => Ok((p, x)),
            t => Err(SyntaxError::new(
                pos,
                format!("expected a suspension, found `{t}`"),
            )),
        }
    }

    fn sort(&mut self) -> Res<Sort> {
        let pos = self.pos();
        let name = self.ident("a sort")?;
        self.sig
            .sort(&name)
            .map_err(|e| SyntaxError::new(pos, e.to_string()))
    }

    fn env(&mut self) -> Res<FreshnessEnv> {
        self.expect(Tok::LParen)?;
        let mut env = FreshnessEnv::new();
        if self.eat(&Tok::RParen) {
            return Ok(env);
        }
        loop {
            let atoms = self.fresh_prefix()?.unwrap_or_default();
            let pos = self.pos();
            let x = self.var()?;
            self.expect(Tok::Colon)?;
            let s = self.sort()?;
            if env.insert(x.clone(), atoms, s).is_some() {
                return Err(SyntaxError::new(pos, format!("variable `{x}` bound twice")));
            }
            if self.eat(&Tok::RParen) {
                return Ok(env);
            }
            self.expect(Tok::Comma)?;
        }
    }

    fn judgement(&mut self) -> Res<Judgement> {
        let pos = self.pos();
        let env = self.env()?;
        self.expect(Tok::Turnstile)?;
        let fresh = self.fresh_prefix()?.unwrap_or_default();
        let lhs = self.term()?;
        let rhs = if self.eat(&Tok::Tilde) {
            self.term()?
        } else {
            lhs.clone()
        };
        self.expect(Tok::Colon)?;
        let sort = self.sort()?;
        Judgement::new(&self.sig, env, fresh, lhs, rhs, sort)
            .map_err(|e| SyntaxError::new(pos, e.to_string()))
    }

    fn script(&mut self) -> Res<Script> {
        let pos = self.pos();
        let name = self.ident("a rule name")?;
        let leaf = |rule| {
            Ok(Script {
                pos,
                rule,
                premises: Vec::new(),
            })
        };
        let rule = match name.as_str() {
            "axiom" => {
                self.expect(Tok::LParen)?;
                let name = self.ident("an axiom name")?;
                self.expect(Tok::RParen)?;
                return leaf(Rule::Axiom { name });
            }
            "refl" => {
                self.expect(Tok::LBrace)?;
                let env = self.env()?;
                self.expect(Tok::Turnstile)?;
                let term = self.term()?;
                self.expect(Tok::Colon)?;
                let sort = self.sort()?;
                self.expect(Tok::RBrace)?;
                return leaf(Rule::Refl { env, term, sort });
            }
            "#-equivar" => {
                self.expect(Tok::LBrace)?;
                let atoms = self.atom_set()?;
                self.expect(Tok::Semi)?;
                let (perm, var) = self.suspension()?;
                self.expect(Tok::Colon)?;
                let sort = self.sort()?;
                self.expect(Tok::RBrace)?;
                return leaf(Rule::FreshEquivar {
                    atoms,
                    perm,
                    var,
                    sort,
                });
            }
            "susp" => {
                self.expect(Tok::LBrace)?;
                let (left, x) = self.suspension()?;
                self.expect(Tok::Tilde)?;
                let rpos = self.pos();
                let (right, y) = self.suspension()?;
                if x != y {
                    return Err(SyntaxError::new(
                        rpos,
                        format!("expected a suspension of `{x}`"),
                    ));
                }
                self.expect(Tok::Colon)?;
                let sort = self.sort()?;
                self.expect(Tok::RBrace)?;
                return leaf(Rule::Susp {
                    left,
                    right,
                    var: x,
                    sort,
                });
            }
            "symm" => Rule::Symm,
            "trans" => Rule::Trans,
            "weak" => {
                self.expect(Tok::LBrace)?;
                let env = self.env()?;
                self.expect(Tok::RBrace)?;
                Rule::Weak { env }
            }
            "subst" => {
                self.expect(Tok::LBrace)?;
                let env = self.env()?;
                let mut tuples = BTreeMap::new();
                if self.eat(&Tok::Semi) {
                    loop {
                        let vpos = self.pos();
                        let x = self.var()?;
                        self.expect(Tok::Colon)?;
                        let order = self.atom_tuple()?;
                        self.expect(Tok::Arrow)?;
                        let fresh = self.atom_tuple()?;
                        if tuples.insert(x.clone(), (order, fresh)).is_some() {
                            return Err(SyntaxError::new(
                                vpos,
                                format!("tuples for `{x}` given twice"),
                            ));
                        }
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace)?;
                Rule::Subst { env, tuples }
            }
            "atm-intro" => Rule::AtmIntro {
                atoms: self.atom_set()?,
            },
            "atm-elim" => Rule::AtmElim {
                atoms: self.atom_set()?,
            },
            other => {
                return Err(SyntaxError::new(pos, format!("unknown rule `{other}`")));
            }
        };
        self.expect(Tok::LParen)?;
        let mut premises = Vec::new();
        if !self.eat(&Tok::RParen) {
            loop {
                premises.push(self.script()?);
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        Ok(Script {
            pos,
            rule,
            premises,
        })
    }

    fn declaration_allowed(&self, frozen: bool) -> Res<()> {
        if frozen {
            self.err(
                "sorts and operations must be declared before theories, judgements and derivations",
            )
        } else {
            Ok(())
        }
    }

    fn file(&mut self) -> Res<SourceFile> {
        let mut frozen = false;
        let mut file = SourceFile::new(self.sig.clone());
        while *self.peek() != Tok::Eof {
            let pos = self.pos();
            let kw = self.ident("a declaration")?;
            match kw.as_str() {
                "sort" => {
                    self.declaration_allowed(frozen)?;
                    let name = self.ident("a sort name")?;
                    self.expect(Tok::Semi)?;
                    Arc::make_mut(&mut self.sig)
                        .add_sort(&name)
                        .map_err(|e| SyntaxError::new(pos, e.to_string()))?;
                }
                "op" => {
                    self.declaration_allowed(frozen)?;
                    let name = self.ident("an operation name")?;
                    if Atom::parse(&name).is_some() {
                        return Err(SyntaxError::new(
                            pos,
                            format!("`{name}` is spelled like an atom"),
                        ));
                    }
                    let arity = if self.eat(&Tok::LBrack) {
                        let n = match self.bump() {
                            Tok::Num(n) => n,
                            _ => return self.unexpected("an atom arity"),
                        };
                        self.expect(Tok::RBrack)?;
                        n
                    } else {
                        0
                    };
                    self.expect(Tok::Colon)?;
                    self.expect(Tok::LParen)?;
                    let mut args = Vec::new();
                    if !self.eat(&Tok::RParen) {
                        loop {
                            args.push(self.ident("a sort")?);
                            if self.eat(&Tok::RParen) {
                                break;
                            }
                            self.expect(Tok::Comma)?;
                        }
                    }
                    self.expect(Tok::Arrow)?;
                    let result = self.ident("a sort")?;
                    self.expect(Tok::Semi)?;
                    let args: Vec<&str> = args.iter().map(String::as_str).collect();
                    Arc::make_mut(&mut self.sig)
                        .add_family(&name, arity, &args, &result)
                        .map_err(|e| SyntaxError::new(pos, e.to_string()))?;
                }
                "theory" => {
                    frozen = true;
                    let name = self.ident("a theory name")?;
                    if file.theory(&name).is_some() {
                        return Err(SyntaxError::new(
                            pos,
                            format!("theory `{name}` declared twice"),
                        ));
                    }
                    let flavour = match self.ident("`nel` or `neol`")?.as_str() {
                        "nel" => Flavour::Nel,
                        "neol" => Flavour::Neol,
                        other => {
                            return self.err(format!("unknown flavour `{other}`"));
                        }
                    };
                    let mut th = Theory::new(&name, self.sig.clone(), flavour);
                    self.expect(Tok::LBrace)?;
                    while !self.eat(&Tok::RBrace) {
                        let apos = self.pos();
                        self.keyword("axiom")?;
                        let an = self.ident("an axiom name")?;
                        self.expect(Tok::Colon)?;
                        let j = self.judgement()?;
                        self.expect(Tok::Semi)?;
                        th.add_axiom(&an, j)
                            .map_err(|e| SyntaxError::new(apos, e.to_string()))?;
                    }
                    file.theories.push(th);
                }
                "judgement" => {
                    frozen = true;
                    let name = self.ident("a judgement name")?;
                    self.expect(Tok::Colon)?;
                    let j = self.judgement()?;
                    self.expect(Tok::Semi)?;
                    file.judgements.push((name, j));
                }
                "derivation" => {
                    frozen = true;
                    let name = self.ident("a derivation name")?;
                    self.keyword("in")?;
                    let tpos = self.pos();
                    let theory = self.ident("a theory name")?;
                    if file.theory(&theory).is_none() {
                        return Err(SyntaxError::new(tpos, format!("unknown theory `{theory}`")));
                    }
                    self.expect(Tok::Colon)?;
                    let goal = self.judgement()?;
                    self.expect(Tok::Define)?;
                    let script = self.script()?;
                    self.expect(Tok::Semi)?;
                    file.derivations.push(DerivationItem {
                        name,
                        theory,
                        goal,
                        script,
                        pos,
                    });
                }
                other => {
                    return Err(SyntaxError::new(
                        pos,
                        format!("unknown declaration `{other}`"),
                    ));
                }
            }
        }
        file.sig = self.sig.clone();
        Ok(file)
    }
}

pub fn parse_file(src: &str) -> Result<SourceFile, SyntaxError> {
    Parser::new(src, Arc::new(Signature::new()))?.file()
}

pub fn parse_judgement(sig: &Signature, src: &str) -> Result<Judgement, SyntaxError> {
    let mut p = Parser::new(src, Arc::new(sig.clone()))?;
    let j = p.judgement()?;
    p.finish()?;
    Ok(j)
}

/// Parses a term without sort checking it.
pub fn parse_term(sig: &Signature, src: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src, Arc::new(sig.clone()))?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_script(sig: &Signature, src: &str) -> Result<Script, SyntaxError> {
    let mut p = Parser::new(src, Arc::new(sig.clone()))?;
    let s = p.script()?;
    p.finish()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> Signature {
        Signature::lambda()
    }

    #[test]
    fn freshness_shorthand() {
        let j = parse_judgement(&lam(), "(x : tm) |- {a} # lam[a] x : tm").unwrap();
        assert!(!j.is_equation());
        assert_eq!(j.lhs(), j.rhs());
        let k = parse_judgement(&lam(), "(x : tm) |- a # lam[a] x : tm").unwrap();
        assert_eq!(j, k);
    }

    #[test]
    fn suspensions_and_parentheses() {
        let sig = lam();
        let t = parse_term(&sig, "lam[b]((a b) x)").unwrap();
        assert_eq!(t.to_string(), "lam[b]((a b) x)");
        assert_eq!(parse_term(&sig, "lam[b] (a b) x").unwrap(), t);
        let u = parse_term(&sig, "(a b)(c d e) y").unwrap();
        assert_eq!(u.to_string(), "(a b)(c d e) y");
        assert_eq!(
            parse_term(&sig, "(y)").unwrap(),
            parse_term(&sig, "y").unwrap()
        );
    }

    #[test]
    fn cycles_compose_right_to_left() {
        let t = parse_term(&lam(), "(a b)(a c) x").unwrap();
        assert_eq!(t.to_string(), "(a c b) x");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_judgement(&lam(), "(x : tm) |-\n  app(x) : tm").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 3 });
        let err = parse_judgement(&lam(), "(x : tm) |- y : tm").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 1 });
        let err = parse_file("sort tm;\nop lam[1] : (tx) -> tm;").unwrap_err();
        assert_eq!(err.pos.line, 2);
        assert!(err.message.contains("tx"), "{}", err.message);
    }

    #[test]
    fn file_with_theory() {
        let src =
            "sort tm;\nop var[1] : () -> tm;\nop lam[1] : (tm) -> tm;\nop app : (tm, tm) -> tm;\n\
                   theory t nel { axiom alpha : (x : tm) |- {a} # lam[a] x : tm; }";
        let f = parse_file(src).unwrap();
        assert_eq!(*f.sig, lam());
        assert_eq!(f.theories[0].axioms().len(), 1);
    }

    #[test]
    fn neol_theory_rejects_freshness() {
        let src = "sort tm;\nop lam[1] : (tm) -> tm;\ntheory t neol {\n  axiom alpha : (x : tm) |- {a} # lam[a] x : tm;\n}";
        let err = parse_file(src).unwrap_err();
        assert_eq!(err.pos, Pos { line: 4, col: 3 });
    }

    #[test]
    fn scripts() {
        let s = parse_script(
            &lam(),
            "subst{(y : tm); x : [a] -> [b]}(refl{(y : tm) |- y : tm}, atm-elim{a}(axiom(alpha)))",
        )
        .unwrap();
        assert_eq!(s.premises.len(), 2);
        assert!(matches!(&s.rule, Rule::Subst { tuples, .. } if tuples.len() == 1));
        assert!(parse_script(&lam(), "frob(axiom(a))").is_err());
    }
}
