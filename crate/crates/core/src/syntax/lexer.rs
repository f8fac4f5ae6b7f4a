use super::{Pos, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(usize),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Hash,
    Tilde,
    Turnstile,
    Arrow,
    Define,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Hash => "#",
            Tok::Tilde => "~",
            Tok::Turnstile => "|-",
            Tok::Arrow => "->",
            Tok::Define => ":=",
            _ => "",
        }
    }
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `src` into tokens. Identifiers may contain inner hyphens
/// (`atm-intro`); `#-` followed by letters lexes as one identifier.
pub fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let peek = chars.get(i + 1).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && peek == Some('/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let ident_from = |start: usize, i: &mut usize| {
            while *i < chars.len() {
                let ch = chars[*i];
                let hyphen =
                    ch == '-' && chars.get(*i + 1).is_some_and(|n| n.is_ascii_alphabetic());
                if ident_char(ch) || hyphen {
                    *i += 1;
                } else {
                    break;
                }
            }
            chars[start..*i].iter().collect::<String>()
        };
        let start = i;
        let tok = if ident_start(c) {
            i += 1;
            Tok::Ident(ident_from(start, &mut i))
        } else if c == '#' && peek == Some('-') {
            i += 2;
            let word = ident_from(start, &mut i);
            if word.len() == 2 {
                return Err(SyntaxError::new(pos, "expected a rule name after `#-`"));
            }
            Tok::Ident(word)
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse()
                .map_err(|_| SyntaxError::new(pos, format!("number `{text}` is too large")))?;
            Tok::Num(n)
        } else {
            let (tok, width) = match (c, peek) {
                ('|', Some('-')) => (Tok::Turnstile, 2),
                ('-', Some('>')) => (Tok::Arrow, 2),
                (':', Some('=')) => (Tok::Define, 2),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('[', _) => (Tok::LBrack, 1),
                (']', _) => (Tok::RBrack, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                (',', _) => (Tok::Comma, 1),
                (';', _) => (Tok::Semi, 1),
                (':', _) => (Tok::Colon, 1),
                ('#', _) => (Tok::Hash, 1),
                ('~', _) => (Tok::Tilde, 1),
                _ => return Err(SyntaxError::new(pos, format!("unexpected character `{c}`"))),
            };
            i += width;
            tok
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
