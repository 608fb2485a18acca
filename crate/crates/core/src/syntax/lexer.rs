//! Tokenizer shared by the Turtle, Manchester and query parsers.
//!
//! Besides the usual `"..."` strings it accepts the ``...'' quoting found in
//! typeset listings, and quoted local names such as sio:`in relation to'
//! (opened by a backtick or apostrophe, closed by either).

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    IriRef(String),
    /// `prefix:local`, a bare word (`prefix == None`), or a quoted name.
    Name {
        prefix: Option<String>,
        local: String,
        quoted: bool,
    },
    Blank(String),
    Str {
        text: String,
        lang: Option<String>,
    },
    Var(String),
    Int(u64),
    Directive(String),
    Punct(char),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::IriRef(i) => format!("<{i}>"),
            Tok::Name { prefix: Some(p), local, .. } => format!("{p}:{local}"),
            Tok::Name { prefix: None, local, .. } => format!("{local:?}"),
            Tok::Blank(b) => format!("_:{b}"),
            Tok::Str { text, .. } => format!("string {text:?}"),
            Tok::Var(v) => format!("?{v}"),
            Tok::Int(n) => n.to_string(),
            Tok::Directive(d) => format!("@{d}"),
            Tok::Punct(c) => format!("'{c}'"),
            Tok::Eof => "end of input".to_string(),
        }
    }

    pub(crate) fn is_word(&self, word: &str) -> bool {
        matches!(self, Tok::Name { prefix: None, local, quoted: false } if local == word)
    }

    pub(crate) fn is_word_ci(&self, word: &str) -> bool {
        matches!(self, Tok::Name { prefix: None, local, quoted: false } if local.eq_ignore_ascii_case(word))
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub(crate) fn error(&self, expected: impl Into<String>) -> SyntaxError {
        SyntaxError::Unexpected {
            line: self.line,
            column: self.column,
            expected: expected.into(),
            found: self.tok.describe(),
        }
    }
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    rest: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.rest.chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        self.rest = &self.rest[c.len_utf8()..];
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, column: usize, expected: &str, found: &str) -> SyntaxError {
        SyntaxError::Unexpected { line, column, expected: expected.to_string(), found: found.to_string() }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    /// Local name: name chars, with interior dots allowed.
    fn local_name(&mut self) -> String {
        let mut out = String::new();
        loop {
            match self.peek() {
                Some(c) if is_name_char(c) => {
                    out.push(c);
                    self.bump();
                }
                Some('.') if !out.is_empty() && self.peek2().is_some_and(is_name_char) => {
                    out.push('.');
                    self.bump();
                }
                _ => return out,
            }
        }
    }

    fn quoted_name(&mut self, line: usize, column: usize) -> Result<String, SyntaxError> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('\'') | Some('`') => return Ok(out),
                Some('\n') | None => return Err(self.err(line, column, "closing quote of name", "end of line")),
                Some(c) => out.push(c),
            }
        }
    }

    fn lang_tag(&mut self) -> Option<String> {
        if self.peek() == Some('@') && self.peek2().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.bump();
            Some(self.take_while(|c| c.is_ascii_alphanumeric() || c == '-'))
        } else {
            None
        }
    }

    fn string(&mut self, line: usize, column: usize) -> Result<Tok, SyntaxError> {
        self.bump();
        let mut text = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => {
                    let escaped = match self.bump() {
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('r') => '\r',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        other => {
                            let found = other.map_or("end of input".to_string(), |c| format!("\\{c}"));
                            return Err(self.err(self.line, self.column, "string escape", &found));
                        }
                    };
                    text.push(escaped);
                }
                Some('\n') | None => return Err(self.err(line, column, "closing '\"'", "end of line")),
                Some(c) => text.push(c),
            }
        }
        Ok(Tok::Str { text, lang: self.lang_tag() })
    }

    /// ``text''
    fn typeset_string(&mut self, line: usize, column: usize) -> Result<Tok, SyntaxError> {
        self.bump();
        self.bump();
        let mut text = String::new();
        loop {
            match self.bump() {
                Some('\'') if self.peek() == Some('\'') => {
                    self.bump();
                    break;
                }
                Some('\n') | None => return Err(self.err(line, column, "closing ''", "end of line")),
                Some(c) => text.push(c),
            }
        }
        Ok(Tok::Str { text, lang: self.lang_tag() })
    }

    fn next_token(&mut self) -> Result<Token, SyntaxError> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    self.take_while(|c| c != '\n');
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let token = |tok| Ok(Token { tok, line, column });
        let Some(c) = self.peek() else {
            return token(Tok::Eof);
        };
        match c {
            '<' => {
                self.bump();
                let iri = self.take_while(|c| c != '>' && !c.is_whitespace());
                if self.bump() != Some('>') {
                    return Err(self.err(line, column, "closing '>'", "whitespace or end of input"));
                }
                token(Tok::IriRef(iri))
            }
            '"' => token(self.string(line, column)?),
            '`' if self.peek2() == Some('`') => token(self.typeset_string(line, column)?),
            '`' | '\'' => {
                let local = self.quoted_name(line, column)?;
                token(Tok::Name { prefix: None, local, quoted: true })
            }
            '@' => {
                self.bump();
                token(Tok::Directive(self.take_while(|c| c.is_ascii_alphabetic())))
            }
            '?' | '$' => {
                self.bump();
                let name = self.take_while(is_name_char);
                if name.is_empty() {
                    return Err(self.err(line, column, "variable name", "nothing"));
                }
                token(Tok::Var(name))
            }
            '0'..='9' => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n = digits.parse().map_err(|_| self.err(line, column, "integer", &digits))?;
                token(Tok::Int(n))
            }
            '_' if self.peek2() == Some(':') => {
                self.bump();
                self.bump();
                token(Tok::Blank(self.local_name()))
            }
            ':' => {
                self.bump();
                token(self.after_colon(String::new(), line, column)?)
            }
            c if is_name_start(c) => {
                let word = self.take_while(is_name_char);
                if self.peek() == Some(':') {
                    self.bump();
                    token(self.after_colon(word, line, column)?)
                } else {
                    token(Tok::Name { prefix: None, local: word, quoted: false })
                }
            }
            '.' | ';' | ',' | '[' | ']' | '(' | ')' | '{' | '}' | '|' | '*' => {
                self.bump();
                token(Tok::Punct(c))
            }
            other => Err(self.err(line, column, "token", &other.to_string())),
        }
    }

    fn after_colon(&mut self, prefix: String, line: usize, column: usize) -> Result<Tok, SyntaxError> {
        if matches!(self.peek(), Some('`') | Some('\'')) {
            let local = self.quoted_name(line, column)?;
            return Ok(Tok::Name { prefix: Some(prefix), local, quoted: true });
        }
        Ok(Tok::Name { prefix: Some(prefix), local: self.local_name(), quoted: false })
    }
}

/// Tokenizes the whole input; the last token is always `Eof`.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut lexer = Lexer { chars: text.chars().peekable(), rest: text, line: 1, column: 1 };
    let mut out = Vec::new();
    loop {
        let token = lexer.next_token()?;
        let done = token.tok == Tok::Eof;
        out.push(token);
        if done {
            return Ok(out);
        }
    }
}
