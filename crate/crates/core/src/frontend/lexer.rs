use num_bigint::BigInt;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    At(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Colon,
    End,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier {s}"),
            Tok::At(s) => format!("@{s}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Colon => "':'".into(),
            Tok::End => "end of line".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub col: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes one line; `#` starts a comment. Columns count characters from 1.
pub(crate) fn lex_line(line: &str, lineno: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: Tok::Int(text.parse().expect("digits")), col });
        } else if ident_start(c) || c == '@' {
            let at = c == '@';
            let start = if at { i + 1 } else { i };
            if at && !chars.get(start).is_some_and(|&c| ident_start(c)) {
                let found = chars.get(start).map_or("end of line".to_string(), |c| format!("'{c}'"));
                return Err(ParseError::new(lineno, col + 1, &["a variable name after '@'"], found));
            }
            i = start;
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: if at { Tok::At(name) } else { Tok::Ident(name) }, col });
        } else {
            return Err(ParseError::new(lineno, col, &["a token"], format!("'{}'", c.escape_debug())));
        }
    }
    out.push(Spanned { tok: Tok::End, col: chars.len() + 1 });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_columns() {
        let t = lex_line("x*@y + 12 # note", 1).unwrap();
        let kinds: Vec<Tok> = t.iter().map(|s| s.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("x".into()),
                Tok::Star,
                Tok::At("y".into()),
                Tok::Plus,
                Tok::Int(12.into()),
                Tok::End
            ]
        );
        assert_eq!(t[4].col, 8);
    }

    #[test]
    fn stray_character() {
        let e = lex_line("x $ y", 3).unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
    }
}
