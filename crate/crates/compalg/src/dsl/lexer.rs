use super::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Eq,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '′' | '.' | '-')
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let line_no = li + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = i + 1;
            let single = |tok| Token {
                tok,
                span: Span::new(line_no, start, start + 1),
            };
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '{' => {
                    out.push(single(Tok::LBrace));
                    i += 1;
                }
                '}' => {
                    out.push(single(Tok::RBrace));
                    i += 1;
                }
                '[' => {
                    out.push(single(Tok::LBracket));
                    i += 1;
                }
                ']' => {
                    out.push(single(Tok::RBracket));
                    i += 1;
                }
                ',' => {
                    out.push(single(Tok::Comma));
                    i += 1;
                }
                '=' => {
                    out.push(single(Tok::Eq));
                    i += 1;
                }
                '"' => {
                    let mut s = String::new();
                    i += 1;
                    loop {
                        match chars.get(i) {
                            None => {
                                return Err(Diagnostic::parse(
                                    "unterminated string",
                                    Span::new(line_no, start, i + 1),
                                ))
                            }
                            Some('"') => break,
                            Some('\\') => {
                                match chars.get(i + 1) {
                                    Some(e @ ('"' | '\\')) => s.push(*e),
                                    _ => {
                                        return Err(Diagnostic::parse(
                                            "unknown escape in string",
                                            Span::new(line_no, i + 1, i + 3),
                                        ))
                                    }
                                }
                                i += 2;
                            }
                            Some(ch) => {
                                s.push(*ch);
                                i += 1;
                            }
                        }
                    }
                    i += 1;
                    out.push(Token {
                        tok: Tok::Str(s),
                        span: Span::new(line_no, start, i + 1),
                    });
                }
                c if ident_char(c) => {
                    let mut j = i;
                    while j < chars.len() && ident_char(chars[j]) {
                        j += 1;
                    }
                    out.push(Token {
                        tok: Tok::Ident(chars[i..j].iter().collect()),
                        span: Span::new(line_no, start, j + 1),
                    });
                    i = j;
                }
                c => {
                    return Err(Diagnostic::parse(
                        format!("unexpected character `{c}`"),
                        Span::new(line_no, start, start + 1),
                    ))
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_spans() {
        let toks = lex("elements G = {m, m'} # note\n  sequence").unwrap();
        assert_eq!(
            toks[0],
            Token {
                tok: Tok::Ident("elements".into()),
                span: Span::new(1, 1, 9)
            }
        );
        assert_eq!(toks[5].tok, Tok::Comma);
        assert_eq!(
            toks[6],
            Token {
                tok: Tok::Ident("m'".into()),
                span: Span::new(1, 18, 20)
            }
        );
        assert_eq!(toks.last().unwrap().span, Span::new(2, 3, 11));
    }

    #[test]
    fn strings() {
        let toks = lex(r#"from "a \"b\".json""#).unwrap();
        assert_eq!(toks[1].tok, Tok::Str("a \"b\".json".into()));
        assert_eq!(toks[1].span, Span::new(1, 6, 20));
        assert_eq!(lex("\"open").unwrap_err().span, Span::new(1, 1, 6));
        assert_eq!(lex("x ; y").unwrap_err().span, Span::new(1, 3, 4));
    }
}
