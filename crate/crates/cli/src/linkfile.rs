//! The `.mlnk` link file format.
//!
//! ```text
//! # Borromean rings
//! components 3
//! valid_to 4
//! longitude 1 = [m2, m3]
//! longitude 2 = [m3, m1]
//! longitude 3 = [m1, m2]
//! ```
//!
//! Words are juxtapositions of `m<j>`, `m<j>^-1`, `e` (identity) and
//! commutators `[w1, w2] = w1 w2 w1^-1 w2^-1`, which nest. Optional
//! `label <i> = <name>` lines name components. `#` starts a comment.

use std::fmt;

use milnor_core::links::{LinkError, LongitudeLink};
use milnor_core::magnus::{FreeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownDirective(String),
    UnknownToken(String),
    Expected(&'static str),
    BadNumber(String),
    GeneratorOutOfRange { index: usize, components: usize },
    ComponentOutOfRange { index: usize, components: usize },
    DuplicateHeader(&'static str),
    MissingHeader(&'static str),
    HeaderAfterLongitude,
    DuplicateLongitude(usize),
    DuplicateLabel(usize),
    MissingLongitude(usize),
    Link(LinkError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            UnknownDirective(s) => write!(f, "unknown directive `{s}`"),
            UnknownToken(s) => write!(f, "unknown token `{s}`"),
            Expected(what) => write!(f, "expected {what}"),
            BadNumber(s) => write!(f, "`{s}` is not a positive integer"),
            GeneratorOutOfRange { index, components } => {
                write!(f, "generator m{index} out of range m1..m{components}")
            }
            ComponentOutOfRange { index, components } => {
                write!(f, "component {index} out of range 1..={components}")
            }
            DuplicateHeader(h) => write!(f, "`{h}` given twice"),
            MissingHeader(h) => write!(f, "missing `{h}` line"),
            HeaderAfterLongitude => f.write_str("header lines must precede longitudes"),
            DuplicateLongitude(i) => write!(f, "longitude {i} given twice"),
            DuplicateLabel(i) => write!(f, "label {i} given twice"),
            MissingLongitude(i) => write!(f, "longitude {i} is missing"),
            Link(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.kind
        )
    }
}

impl std::error::Error for ParseError {}

/// Cursor over one line; columns are 1-based character positions.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.text[..at].chars().count() + 1,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    /// Next run of non-space, non-punctuation characters.
    fn ident(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || matches!(c, '[' | ']' | ',' | '='))
            .unwrap_or(rest.len());
        self.pos += len;
        (start, &rest[..len])
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(self.pos, ParseErrorKind::Expected(what)))
        }
    }

    fn number(&mut self) -> Result<(usize, usize), ParseError> {
        let (at, tok) = self.ident();
        if tok.is_empty() {
            return Err(self.err(at, ParseErrorKind::Expected("a number")));
        }
        match tok.parse::<usize>() {
            Ok(n) if n > 0 => Ok((at, n)),
            _ => Err(self.err(at, ParseErrorKind::BadNumber(tok.to_string()))),
        }
    }

    /// word := factor*, stopping at `]`, `,` or end of line
    fn word(&mut self, rank: usize) -> Result<FreeWord, ParseError> {
        let mut acc = FreeWord::identity(rank).expect("rank checked");
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(']') | Some(',') => return Ok(acc),
                Some('[') => {
                    self.pos += 1;
                    let a = self.word(rank)?;
                    self.expect(',', "`,` inside commutator")?;
                    let b = self.word(rank)?;
                    self.expect(']', "`]` closing commutator")?;
                    let c = FreeWord::commutator(&a, &b).expect("same rank");
                    acc = acc.mul(&c).expect("same rank");
                }
                Some(_) => {
                    let (at, tok) = self.ident();
                    let w = self.letter(at, tok, rank)?;
                    acc = acc.mul(&w).expect("same rank");
                }
            }
        }
    }

    fn letter(&self, at: usize, tok: &str, rank: usize) -> Result<FreeWord, ParseError> {
        if tok == "e" {
            return Ok(FreeWord::identity(rank).expect("rank checked"));
        }
        let unknown = || self.err(at, ParseErrorKind::UnknownToken(tok.to_string()));
        let body = tok.strip_prefix('m').ok_or_else(unknown)?;
        let (digits, inverted) = match body.strip_suffix("^-1") {
            Some(d) => (d, true),
            None => (body, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        let index: usize = digits.parse().map_err(|_| unknown())?;
        if index == 0 || index > rank {
            return Err(self.err(
                at,
                ParseErrorKind::GeneratorOutOfRange {
                    index,
                    components: rank,
                },
            ));
        }
        Ok(FreeWord::new(rank, vec![Letter::new(index, inverted)]).expect("index checked"))
    }
}

/// Parses a link file.
pub fn parse_link_file(text: &str) -> Result<LongitudeLink, ParseError> {
    let mut components: Option<usize> = None;
    let mut valid_to: Option<usize> = None;
    let mut longitudes: Vec<Option<FreeWord>> = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut any_longitude = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor {
            text: content,
            pos: 0,
            line: line_no,
        };
        if cur.at_end() {
            continue;
        }
        let (at, directive) = cur.ident();
        match directive {
            "components" | "valid_to" => {
                if any_longitude {
                    return Err(cur.err(at, ParseErrorKind::HeaderAfterLongitude));
                }
                let (slot, name) = if directive == "components" {
                    (&mut components, "components")
                } else {
                    (&mut valid_to, "valid_to")
                };
                if slot.is_some() {
                    return Err(cur.err(at, ParseErrorKind::DuplicateHeader(name)));
                }
                let (_, n) = cur.number()?;
                *slot = Some(n);
                if directive == "components" {
                    longitudes = vec![None; n];
                    labels = vec![None; n];
                }
            }
            "longitude" | "label" => {
                let Some(r) = components else {
                    return Err(cur.err(at, ParseErrorKind::MissingHeader("components")));
                };
                let (iat, i) = cur.number()?;
                if i > r {
                    return Err(cur.err(
                        iat,
                        ParseErrorKind::ComponentOutOfRange {
                            index: i,
                            components: r,
                        },
                    ));
                }
                cur.expect('=', "`=`")?;
                if directive == "label" {
                    if labels[i - 1].is_some() {
                        return Err(cur.err(at, ParseErrorKind::DuplicateLabel(i)));
                    }
                    cur.skip_ws();
                    let name = cur.text[cur.pos..].trim_end();
                    if name.is_empty() {
                        return Err(cur.err(cur.pos, ParseErrorKind::Expected("a label")));
                    }
                    labels[i - 1] = Some(name.to_string());
                    continue;
                }
                if longitudes[i - 1].is_some() {
                    return Err(cur.err(at, ParseErrorKind::DuplicateLongitude(i)));
                }
                let w = cur.word(r)?;
                if !cur.at_end() {
                    let stray = cur.text[cur.pos..].chars().next().unwrap_or(' ');
                    return Err(cur.err(cur.pos, ParseErrorKind::UnknownToken(stray.to_string())));
                }
                longitudes[i - 1] = Some(w);
                any_longitude = true;
            }
            other => {
                return Err(cur.err(at, ParseErrorKind::UnknownDirective(other.to_string())));
            }
        }
    }

    let end = |kind| ParseError {
        line: last_line.max(1),
        column: 1,
        kind,
    };
    let r = components.ok_or_else(|| end(ParseErrorKind::MissingHeader("components")))?;
    let valid_to = valid_to.ok_or_else(|| end(ParseErrorKind::MissingHeader("valid_to")))?;
    let mut words = Vec::with_capacity(r);
    for (i, w) in longitudes.into_iter().enumerate() {
        words.push(w.ok_or_else(|| end(ParseErrorKind::MissingLongitude(i + 1)))?);
    }
    let link = LongitudeLink::new(words, valid_to).map_err(|e| end(ParseErrorKind::Link(e)))?;
    if labels.iter().any(Option::is_some) {
        let names = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| (i + 1).to_string()))
            .collect();
        return link
            .with_labels(names)
            .map_err(|e| end(ParseErrorKind::Link(e)));
    }
    Ok(link)
}

/// Writes a link in the file format; words are written letter by letter.
pub fn serialize_link(link: &LongitudeLink) -> String {
    let mut out = format!(
        "components {}\nvalid_to {}\n",
        link.components(),
        link.valid_to()
    );
    if let Some(labels) = link.labels() {
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("label {} = {}\n", i + 1, l));
        }
    }
    for (i, w) in link.longitudes().iter().enumerate() {
        out.push_str(&format!("longitude {} = {}\n", i + 1, w));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_hopf() {
        let l = parse_link_file("components 2\nvalid_to 4\nlongitude 1 = m2\nlongitude 2 = m1")
            .unwrap();
        assert_eq!(l, LongitudeLink::hopf(4).unwrap());
    }

    #[test]
    fn commutators_expand() {
        let text =
            "components 3\nvalid_to 3\nlongitude 1 = [m2, m3]\nlongitude 2 = e\nlongitude 3 = e\n";
        let l = parse_link_file(text).unwrap();
        assert_eq!(l.longitudes()[0].to_string(), "m2 m3 m2^-1 m3^-1");
        let nested =
            "components 2\nvalid_to 3\nlongitude 1 = [m1, [m1, m2]] m2^-1 # tail\nlongitude 2 = e";
        let l = parse_link_file(nested).unwrap();
        assert_eq!(
            l.longitudes()[0].to_string(),
            "m1 m1 m2 m1^-1 m2^-1 m1^-1 m2 m1 m2^-1 m1^-1 m2^-1"
        );
    }

    #[test]
    fn reports_positions() {
        let text = "components 3\nvalid_to 3\nlongitude 1 = m2 m9\n";
        let e = parse_link_file(text).unwrap_err();
        assert_eq!((e.line, e.column), (3, 18));
        assert_eq!(
            e.kind,
            ParseErrorKind::GeneratorOutOfRange {
                index: 9,
                components: 3
            }
        );
        assert_eq!(
            e.to_string(),
            "line 3, column 18: generator m9 out of range m1..m3"
        );

        let e = parse_link_file("components 2\nvalid_to 3\nlongitude 1 = m2 x\n").unwrap_err();
        assert_eq!(
            (e.line, e.column, e.kind),
            (3, 18, ParseErrorKind::UnknownToken("x".into()))
        );

        let e = parse_link_file("components 2\nvalid_to 3\nlongitude 1 = m2\nlongitude 1 = m2\n")
            .unwrap_err();
        assert_eq!((e.line, e.kind), (4, ParseErrorKind::DuplicateLongitude(1)));

        let e = parse_link_file("components 2\nvalid_to 3\nlongitude 1 = m2\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingLongitude(2));

        let e = parse_link_file("components 2\nvalid_to 3\nlongitude 1 = [m2, m1\nlongitude 2 = e")
            .unwrap_err();
        assert_eq!(
            (e.line, e.kind),
            (3, ParseErrorKind::Expected("`]` closing commutator"))
        );

        let e = parse_link_file("valid_to 3\nlongitude 1 = m2\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingHeader("components"));

        let e = parse_link_file("components 2\nvalid_to 3\nlongitude 1 = m2^2\nlongitude 2 = e")
            .unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownToken("m2^2".into()));
    }

    #[test]
    fn labels_round_trip() {
        let text = "components 2\nvalid_to 2\nlabel 1 = left\nlongitude 1 = m2\nlongitude 2 = m1\n";
        let l = parse_link_file(text).unwrap();
        assert_eq!(l.labels().unwrap(), ["left".to_string(), "2".to_string()]);
        let again = parse_link_file(&serialize_link(&l)).unwrap();
        assert_eq!(again, l);
    }
}
