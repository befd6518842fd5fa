//! Line grammar for scenario files.
//!
//! ```text
//! line    := command (key "=" value)*          # comment to end of line
//! value   := sweep | list | record | scalar
//! sweep   := ("lin" | "log") "(" num "," num "," num ")" | "list" "(" [num ("," num)*] ")"
//! list    := "[" [value (";" value)*] "]"
//! record  := ident "{" [ident ":" value ("," ident ":" value)*] "}"
//! scalar  := complex | ident
//! complex := num | num ("+" | "-") unum "i" | num "i" | ("+" | "-")? "i"
//! ```
//!
//! Whitespace separates top-level entries only; it is not allowed inside a value.

use std::fmt;

use horo_core::Complex;

/// Parsed value. Plain reals are complex numbers with `im = 0` written
/// without an imaginary part; [`Value::Real`] keeps them apart so they
/// serialise back the way they were written.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Complex(Complex),
    Word(String),
    Record { name: String, fields: Vec<(String, Value)> },
    List(Vec<Value>),
    Sweep(Sweep),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    Lin { from: f64, to: f64, n: usize },
    Log { from: f64, to: f64, n: usize },
    List(Vec<f64>),
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Sweep::Lin { from, to, n } => match n {
                0 => vec![],
                1 => vec![*from],
                _ => (0..*n).map(|k| from + (to - from) * k as f64 / (*n - 1) as f64).collect(),
            },
            Sweep::Log { from, to, n } => horo_core::model::log_grid(*from, *to, *n),
            Sweep::List(v) => v.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Sweep::Lin { n, .. } | Sweep::Log { n, .. } => *n,
            Sweep::List(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One `key=value` entry with the column where its key starts (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: Value,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawLine {
    pub line: usize,
    pub command: String,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub code: &'static str,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, code: &'static str, message: impl Into<String>) -> Self {
        ParseError { line, col, code, message: message.into() }
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    /// Column of `chars[0]` in the source line.
    base: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize, base: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line, base, _src: src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn col(&self) -> usize {
        self.base + self.pos
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), "PARSE_ERROR", message)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            let ok = if self.pos == start { c.is_ascii_alphabetic() || c == '_' } else { c.is_ascii_alphanumeric() || c == '_' };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    /// Unsigned decimal number with optional fraction and exponent.
    fn unsigned(&mut self) -> Option<f64> {
        let start = self.pos;
        let digits = |cur: &mut Self| {
            let s = cur.pos;
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.pos += 1;
            }
            cur.pos > s
        };
        let int = digits(self);
        let mut frac = false;
        if self.peek() == Some('.') {
            self.pos += 1;
            frac = digits(self);
        }
        if !int && !frac {
            self.pos = start;
            return None;
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            if !digits(self) {
                self.pos = save;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().ok()
    }

    fn sign(&mut self) -> f64 {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1.0
            }
            Some('+') => {
                self.pos += 1;
                1.0
            }
            _ => 1.0,
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let s = self.sign();
        match self.unsigned() {
            Some(x) => Ok(s * x),
            None => Err(self.err("expected a number")),
        }
    }

    fn scalar(&mut self) -> Result<Value, ParseError> {
        let start = self.pos;
        let s = self.sign();
        let Some(x) = self.unsigned() else {
            if self.peek() == Some('i') && !self.chars.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                self.pos += 1;
                return Ok(Value::Complex(Complex::new(0.0, s)));
            }
            self.pos = start;
            return Err(self.err("expected a number"));
        };
        let x = s * x;
        match self.peek() {
            Some('i') => {
                self.pos += 1;
                Ok(Value::Complex(Complex::new(0.0, x)))
            }
            Some('+' | '-') => {
                let s2 = self.sign();
                let y = match self.unsigned() {
                    Some(y) => y,
                    None if self.peek() == Some('i') => 1.0,
                    None => return Err(self.err("expected the imaginary part")),
                };
                self.expect('i')?;
                Ok(Value::Complex(Complex::new(x, s2 * y)))
            }
            _ => Ok(Value::Real(x)),
        }
    }

    fn sweep_args(&mut self) -> Result<Vec<f64>, ParseError> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.peek() == Some(')') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected `,` or `)`")),
            }
        }
    }

    fn count(&self, x: f64) -> Result<usize, ParseError> {
        if x >= 0.0 && x.fract() == 0.0 && x <= 1e9 {
            Ok(x as usize)
        } else {
            Err(ParseError::new(self.line, self.col(), "RANGE_VIOLATION", format!("grid size {x} is not a count")))
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() == Some(']') {
                    self.pos += 1;
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    match self.peek() {
                        Some(';') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Value::List(items));
                        }
                        _ => return Err(self.err("expected `;` or `]`")),
                    }
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.ident().unwrap_or_default();
                if name == "i" {
                    self.pos = start;
                    return self.scalar();
                }
                match self.peek() {
                    Some('(') if matches!(name.as_str(), "lin" | "log" | "list") => {
                        let args = self.sweep_args()?;
                        let sweep = match name.as_str() {
                            "list" => Sweep::List(args),
                            _ => {
                                if args.len() != 3 {
                                    return Err(self.err(format!("{name}(from,to,n) takes three arguments")));
                                }
                                let n = self.count(args[2])?;
                                if name == "lin" {
                                    Sweep::Lin { from: args[0], to: args[1], n }
                                } else {
                                    if !(args[0] > 0.0 && args[1] > 0.0) {
                                        return Err(ParseError::new(
                                            self.line,
                                            self.col(),
                                            "RANGE_VIOLATION",
                                            "log sweep bounds must be positive",
                                        ));
                                    }
                                    Sweep::Log { from: args[0], to: args[1], n }
                                }
                            }
                        };
                        Ok(Value::Sweep(sweep))
                    }
                    Some('{') => {
                        self.pos += 1;
                        let mut fields = Vec::new();
                        if self.peek() == Some('}') {
                            self.pos += 1;
                            return Ok(Value::Record { name, fields });
                        }
                        loop {
                            let Some(key) = self.ident() else { return Err(self.err("expected a field name")) };
                            self.expect(':')?;
                            fields.push((key, self.value()?));
                            match self.peek() {
                                Some(',') => self.pos += 1,
                                Some('}') => {
                                    self.pos += 1;
                                    return Ok(Value::Record { name, fields });
                                }
                                _ => return Err(self.err("expected `,` or `}`")),
                            }
                        }
                    }
                    _ => Ok(Value::Word(name)),
                }
            }
            Some(_) => self.scalar(),
            None => Err(self.err("missing value")),
        }
    }
}

/// Splits off a trailing `#` comment.
fn strip_comment(text: &str) -> &str {
    match text.find('#') {
        Some(i) => &text[..i],
        None => text,
    }
}

/// Parses one line; `Ok(None)` for blank and comment-only lines.
pub fn parse_line(text: &str, line: usize) -> Result<Option<RawLine>, ParseError> {
    let body = strip_comment(text);
    let mut tokens = Vec::new();
    let mut col = 1;
    for piece in body.split(|c: char| c.is_whitespace()) {
        if !piece.is_empty() {
            tokens.push((col, piece));
        }
        col += piece.chars().count() + 1;
    }
    let Some(&(cmd_col, command)) = tokens.first() else { return Ok(None) };
    let mut cur = Cursor::new(command, line, cmd_col);
    match cur.ident() {
        Some(name) if cur.peek().is_none() => {
            let mut entries = Vec::with_capacity(tokens.len() - 1);
            for &(col, token) in &tokens[1..] {
                let Some(eq) = token.find('=') else {
                    return Err(ParseError::new(line, col, "PARSE_ERROR", format!("expected key=value, found `{token}`")));
                };
                let (key, rest) = (&token[..eq], &token[eq + 1..]);
                let mut kc = Cursor::new(key, line, col);
                if kc.ident().is_none() || kc.peek().is_some() {
                    return Err(ParseError::new(line, col, "PARSE_ERROR", format!("invalid key `{key}`")));
                }
                if entries.iter().any(|e: &Entry| e.key == key) {
                    return Err(ParseError::new(line, col, "PARSE_ERROR", format!("duplicate key `{key}`")));
                }
                let vcol = col + key.chars().count() + 1;
                let mut vc = Cursor::new(rest, line, vcol);
                let value = vc.value()?;
                if vc.peek().is_some() {
                    return Err(vc.err("unexpected trailing characters"));
                }
                entries.push(Entry { key: key.to_string(), value, col });
            }
            Ok(Some(RawLine { line, command: name, entries }))
        }
        _ => Err(ParseError::new(line, cmd_col, "PARSE_ERROR", format!("invalid command `{command}`"))),
    }
}

/// Parses every non-blank line of a scenario file.
pub fn parse_text(text: &str) -> Result<Vec<RawLine>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(raw) = parse_line(line, i + 1)? {
            out.push(raw);
        }
    }
    Ok(out)
}

/// Shortest decimal that reads back to the same `f64`.
pub fn fmt_real(x: f64) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(t) => t.to_string(),
        None => s,
    }
}

pub fn fmt_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", fmt_real(z.re), sign, fmt_real(z.im.abs()))
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sweep::Lin { from, to, n } => write!(f, "lin({},{},{})", fmt_real(*from), fmt_real(*to), n),
            Sweep::Log { from, to, n } => write!(f, "log({},{},{})", fmt_real(*from), fmt_real(*to), n),
            Sweep::List(v) => {
                let items: Vec<String> = v.iter().map(|x| fmt_real(*x)).collect();
                write!(f, "list({})", items.join(","))
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Real(x) => f.write_str(&fmt_real(*x)),
            Value::Complex(z) => f.write_str(&fmt_complex(*z)),
            Value::Word(w) => f.write_str(w),
            Value::Record { name, fields } => {
                write!(f, "{name}{{")?;
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{k}:{v}")?;
                }
                f.write_str("}")
            }
            Value::List(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Value::Sweep(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for RawLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.command)?;
        for e in &self.entries {
            write!(f, " {}={}", e.key, e.value)?;
        }
        Ok(())
    }
}
