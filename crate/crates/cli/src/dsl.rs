//! Line-oriented bench scripts.
//!
//! ```text
//! # plain interferometer
//! source laser
//! beamsplitter BS1
//! mirror M1 arm upper
//! mirror M2 arm lower
//! beamsplitter BS2
//! detector D1
//! detector D2
//! ```
//!
//! Other statements: `block arm <upper|lower>` and
//! `boxes <atom> arm <upper|lower> state <Z+|Z->`. Everything after `#` is
//! a comment. Statement order is composition order.

use std::fmt;

use relational_qm::optics::{Arm, BenchConfig, DetectorId, Element, OpticsError, ZState};

pub const KEYWORDS: [&str; 6] = ["source", "beamsplitter", "mirror", "block", "boxes", "detector"];

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: Span,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.column, self.message)?;
        match self.expected.as_slice() {
            [] => Ok(()),
            [one] => write!(f, " (expected {one})"),
            many => write!(f, " (expected one of: {})", many.join(", ")),
        }
    }
}

impl std::error::Error for Diagnostic {}

/// Parsed script: the validated config plus where each element came from.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchScript {
    pub source: String,
    pub config: BenchConfig,
    pub spans: Vec<Span>,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn new(number: usize, raw: &'a str) -> Self {
        let code = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in code.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, col + 1)),
                (true, Some((b, c))) => {
                    tokens.push(Token {
                        text: &code[b..byte],
                        column: c,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token { text: &code[b..], column: c });
        }
        Self {
            number,
            tokens,
            end_column: code.chars().count() + 1,
        }
    }
}

fn expected(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

struct Cursor<'l, 'a> {
    line: &'l Line<'a>,
    pos: usize,
}

impl Cursor<'_, '_> {
    fn span_here(&self) -> Span {
        let column = self.line.tokens.get(self.pos).map_or(self.line.end_column, |t| t.column);
        Span {
            line: self.line.number,
            column,
        }
    }

    fn fail<T>(&self, what: &[&str]) -> Result<T, Diagnostic> {
        let message = match self.line.tokens.get(self.pos) {
            Some(t) => format!("unexpected token `{}`", t.text),
            None => "unexpected end of line".to_string(),
        };
        Err(Diagnostic {
            span: self.span_here(),
            message,
            expected: expected(what),
        })
    }

    fn next(&mut self, what: &[&str]) -> Result<&str, Diagnostic> {
        match self.line.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.text)
            }
            None => self.fail(what),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), Diagnostic> {
        match self.line.tokens.get(self.pos) {
            Some(t) if t.text == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(&[kw]),
        }
    }

    fn choice<T: Copy>(&mut self, options: &[(&str, T)]) -> Result<T, Diagnostic> {
        let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
        if let Some(t) = self.line.tokens.get(self.pos) {
            if let Some((_, v)) = options.iter().find(|(n, _)| *n == t.text) {
                self.pos += 1;
                return Ok(*v);
            }
        }
        self.fail(&names)
    }

    fn finish(&self) -> Result<(), Diagnostic> {
        if self.pos < self.line.tokens.len() {
            self.fail(&["end of line"])
        } else {
            Ok(())
        }
    }
}

const ARMS: [(&str, Arm); 2] = [("upper", Arm::Upper), ("lower", Arm::Lower)];
const STATES: [(&str, ZState); 2] = [("Z+", ZState::Plus), ("Z-", ZState::Minus)];
const DETECTORS: [(&str, DetectorId); 3] = [("D1", DetectorId::D1), ("D2", DetectorId::D2), ("D3", DetectorId::D3)];

fn parse_line(line: &Line<'_>) -> Result<Element, Diagnostic> {
    let mut c = Cursor { line, pos: 0 };
    let kw = c.next(&KEYWORDS)?;
    let element = match kw {
        "source" => Element::Source {
            name: c.next(&["<name>"])?.to_string(),
        },
        "beamsplitter" => Element::BeamSplitter {
            name: c.next(&["<name>"])?.to_string(),
        },
        "mirror" => {
            let name = c.next(&["<name>"])?.to_string();
            c.keyword("arm")?;
            Element::Mirror {
                name,
                arm: c.choice(&ARMS)?,
            }
        }
        "block" => {
            c.keyword("arm")?;
            Element::Block { arm: c.choice(&ARMS)? }
        }
        "boxes" => {
            let atom = c.next(&["<name>"])?.to_string();
            c.keyword("arm")?;
            let arm = c.choice(&ARMS)?;
            c.keyword("state")?;
            Element::Boxes {
                atom,
                arm,
                state: c.choice(&STATES)?,
            }
        }
        "detector" => Element::Detector(c.choice(&DETECTORS)?),
        _ => {
            c.pos = 0;
            return c.fail(&KEYWORDS);
        }
    };
    c.finish()?;
    Ok(element)
}

/// What a validation message is missing, for the diagnostic's expected list.
fn validation_hint(message: &str) -> Vec<String> {
    if message == "no source" || message.starts_with("bench must start") {
        expected(&["source"])
    } else if message.starts_with("dangling arm") {
        expected(&["beamsplitter"])
    } else if message == "unpaired mirror" {
        expected(&["mirror"])
    } else if let Some(d) = message.strip_prefix("missing detector ") {
        vec![format!("detector {d}")]
    } else if message.starts_with("detector D3 needs") {
        expected(&["block"])
    } else {
        Vec::new()
    }
}

pub fn parse_script(text: &str) -> Result<BenchScript, Diagnostic> {
    let mut elements = Vec::new();
    let mut spans = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let line = Line::new(i + 1, raw);
        if line.tokens.is_empty() {
            continue;
        }
        elements.push(parse_line(&line)?);
        spans.push(Span {
            line: line.number,
            column: line.tokens[0].column,
        });
    }
    let end = Span {
        line: last_line.max(1),
        column: 1,
    };
    match BenchConfig::new(elements) {
        Ok(config) => Ok(BenchScript {
            source: text.to_string(),
            config,
            spans,
        }),
        Err(OpticsError::Invalid { element, message }) => Err(Diagnostic {
            span: element.and_then(|i| spans.get(i).copied()).unwrap_or(end),
            expected: validation_hint(&message),
            message,
        }),
        Err(other) => Err(Diagnostic {
            span: end,
            message: other.to_string(),
            expected: Vec::new(),
        }),
    }
}

pub fn parse_bench(text: &str) -> Result<BenchConfig, Diagnostic> {
    parse_script(text).map(|s| s.config)
}

pub fn print_element(e: &Element) -> String {
    match e {
        Element::Source { name } => format!("source {name}"),
        Element::BeamSplitter { name } => format!("beamsplitter {name}"),
        Element::Mirror { name, arm } => format!("mirror {name} arm {}", arm.name()),
        Element::Block { arm } => format!("block arm {}", arm.name()),
        Element::Boxes { atom, arm, state } => format!("boxes {atom} arm {} state {}", arm.name(), state.name()),
        Element::Detector(d) => format!("detector {}", d.name()),
    }
}

pub fn print_bench(config: &BenchConfig) -> String {
    config.elements().iter().map(|e| print_element(e) + "\n").collect()
}
