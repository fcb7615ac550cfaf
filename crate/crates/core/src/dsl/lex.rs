use std::collections::BTreeSet;

use crate::superalg::CoordName;

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.pos.line, self.pos.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    /// Identifier, possibly with a glued tuple `@(…)` and `~p` marks.
    Name(CoordName),
    /// Unsigned integer literal.
    Int(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    At,
    Comma,
    Semi,
    Arrow,  // ->
    Assign, // =
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Token::Name(n) => write!(f, "`{}`", n.render()),
            Token::Int(s) => write!(f, "`{s}`"),
            Token::LBrace => write!(f, "`{{`"),
            Token::RBrace => write!(f, "`}}`"),
            Token::LParen => write!(f, "`(`"),
            Token::RParen => write!(f, "`)`"),
            Token::At => write!(f, "`@`"),
            Token::Comma => write!(f, "`,`"),
            Token::Semi => write!(f, "`;`"),
            Token::Arrow => write!(f, "`->`"),
            Token::Assign => write!(f, "`=`"),
            Token::Plus => write!(f, "`+`"),
            Token::Minus => write!(f, "`-`"),
            Token::Star => write!(f, "`*`"),
            Token::Caret => write!(f, "`^`"),
            Token::Slash => write!(f, "`/`"),
        }
    }
}

pub struct Lexer<'a> {
    src: &'a [u8],
    at: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            at: 0,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.at).copied()
    }

    fn peek2(&self) -> Option<u8> {
        self.src.get(self.at + 1).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.at += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws_and_comments(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'#') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn lex_int(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c as char);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    /// A name token: identifier plus any glued `@(…)` tuple and `~p` marks.
    fn lex_name(&mut self) -> Result<CoordName, ParseError> {
        let mut base = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                base.push(c as char);
                self.bump();
            } else {
                break;
            }
        }
        let mut tuple: Option<Vec<u8>> = None;
        if self.peek() == Some(b'@') && self.peek2() == Some(b'(') {
            self.bump();
            self.bump();
            let mut entries = Vec::new();
            loop {
                let p = self.pos();
                let digits = self.lex_int();
                if digits.is_empty() {
                    return Err(ParseError::new(p, "expected digit in name tuple"));
                }
                entries.push(digits.parse::<u8>().map_err(|_| {
                    ParseError::new(p, "tuple entry out of range")
                })?);
                match self.peek() {
                    Some(b',') => {
                        self.bump();
                    }
                    Some(b')') => {
                        self.bump();
                        break;
                    }
                    _ => {
                        return Err(ParseError::new(
                            self.pos(),
                            "expected `,` or `)` in name tuple",
                        ))
                    }
                }
            }
            tuple = Some(entries);
        }
        let mut pi = BTreeSet::new();
        while self.peek() == Some(b'~') && self.peek2() == Some(b'p') {
            self.bump();
            self.bump();
            let p = self.pos();
            let digits = self.lex_int();
            if digits.is_empty() {
                return Err(ParseError::new(p, "expected slot number after `~p`"));
            }
            pi.insert(digits.parse::<usize>().map_err(|_| {
                ParseError::new(p, "reversal slot out of range")
            })?);
        }
        Ok(CoordName {
            base,
            tuple,
            pi,
        })
    }

    pub fn tokenize(mut self) -> Result<Vec<(Token, Pos)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws_and_comments();
            let pos = self.pos();
            let c = match self.peek() {
                Some(c) => c,
                None => break,
            };
            let tok = match c {
                b'{' => {
                    self.bump();
                    Token::LBrace
                }
                b'}' => {
                    self.bump();
                    Token::RBrace
                }
                b'(' => {
                    self.bump();
                    Token::LParen
                }
                b')' => {
                    self.bump();
                    Token::RParen
                }
                b'@' => {
                    self.bump();
                    Token::At
                }
                b',' => {
                    self.bump();
                    Token::Comma
                }
                b';' => {
                    self.bump();
                    Token::Semi
                }
                b'=' => {
                    self.bump();
                    Token::Assign
                }
                b'+' => {
                    self.bump();
                    Token::Plus
                }
                b'-' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        Token::Arrow
                    } else {
                        Token::Minus
                    }
                }
                b'*' => {
                    self.bump();
                    Token::Star
                }
                b'^' => {
                    self.bump();
                    Token::Caret
                }
                b'/' => {
                    self.bump();
                    Token::Slash
                }
                b'0'..=b'9' => Token::Int(self.lex_int()),
                c if c.is_ascii_alphabetic() || c == b'_' => Token::Name(self.lex_name()?),
                other => {
                    return Err(ParseError::new(
                        pos,
                        format!("unexpected character `{}`", other as char),
                    ))
                }
            };
            out.push((tok, pos));
        }
        Ok(out)
    }
}
