use super::DslError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Int(u64),
    /// Any non-integer real literal.
    Real(f64),
    /// A real literal immediately followed by `i`, or a bare `i`.
    Imag(f64),
    Ident(String),
    Colon,
    Arrow,
    Eq,
    EqEq,
    Semi,
    Comma,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Real(x) => format!("number {x}"),
            Tok::Imag(x) => format!("imaginary {x}i"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Colon => "':'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Eq => "'='".into(),
            Tok::EqEq => "'=='".into(),
            Tok::Semi => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::Star => "'*'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits source text into tokens with 1-based line/column positions.
/// `#` starts a comment running to the end of the line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    // end of input is reported just past the last token
    let mut end = (1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: tl, col: tc });
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
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut integral = true;
            if i < chars.len() && chars[i] == '.' {
                integral = false;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    integral = false;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let imag = i < chars.len() && chars[i] == 'i' && !chars.get(i + 1).is_some_and(|d| is_ident_char(*d));
            let value: f64 = text
                .parse()
                .map_err(|_| DslError::syntax(tl, tc, format!("malformed number '{text}'")))?;
            let tok = if imag {
                i += 1;
                Tok::Imag(value)
            } else if integral {
                match text.parse::<u64>() {
                    Ok(n) => Tok::Int(n),
                    Err(_) => Tok::Real(value),
                }
            } else {
                Tok::Real(value)
            };
            col += i - start;
            push(&mut out, tok);
            end = (line, col);
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = if word == "i" { Tok::Imag(1.0) } else { Tok::Ident(word) };
            push(&mut out, tok);
            end = (line, col);
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let (tok, len) = match (c, two.as_str()) {
            (_, "->") => (Tok::Arrow, 2),
            (_, "==") => (Tok::EqEq, 2),
            (':', _) => (Tok::Colon, 1),
            ('=', _) => (Tok::Eq, 1),
            (';', _) => (Tok::Semi, 1),
            (',', _) => (Tok::Comma, 1),
            ('*', _) => (Tok::Star, 1),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            _ => return Err(DslError::syntax(tl, tc, format!("unexpected character '{c}'"))),
        };
        i += len;
        col += len;
        push(&mut out, tok);
        end = (line, col);
    }
    out.push(Token { tok: Tok::Eof, line: end.0, col: end.1 });
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn numbers_and_imaginaries() {
        assert_eq!(
            toks("2 0.5 1e-3 2i i -1.5i"),
            vec![
                Tok::Int(2),
                Tok::Real(0.5),
                Tok::Real(1e-3),
                Tok::Imag(2.0),
                Tok::Imag(1.0),
                Tok::Minus,
                Tok::Imag(1.5),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_and_comments() {
        let t = tokenize("mor f # comment\n  : 2").unwrap();
        assert_eq!((t[2].line, t[2].col), (2, 3));
        let end = t.last().unwrap();
        assert_eq!((end.line, end.col), (2, 6));
        let end = tokenize("id 2 # trailing\n\n").unwrap().last().unwrap().clone();
        assert_eq!((end.line, end.col), (1, 5));
    }

    #[test]
    fn bad_character() {
        let e = tokenize("id 2 $").unwrap_err();
        assert_eq!(e, DslError::syntax(1, 6, "unexpected character '$'".into()));
    }
}
