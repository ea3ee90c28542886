//! Text form of cyclic data sets.
//!
//! ```text
//! dataset := "(" int "," int [ "," int ] ";" pairs ")"
//! pairs   := ε | "-" | pair { "," pair }
//! pair    := "(" int "," int ")" [ "^" "[" int "]" ]
//! ```
//!
//! Whitespace is allowed between tokens. Multiplicities are unrolled.

use super::{ConePair, DataSet, DataSetError};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> DataSetError {
        DataSetError::Parse {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), DataSetError> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(format!(
                "expected '{}', found '{}'",
                byte as char, b as char
            ))),
            None => Err(self.error(format!("expected '{}', found end of input", byte as char))),
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<u64, DataSetError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer"));
        }
        // digits only, so from_utf8 cannot fail
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        digits.parse::<u64>().map_err(|_| DataSetError::Parse {
            pos: start,
            message: format!("integer '{digits}' out of range"),
        })
    }

    fn pair(&mut self, out: &mut Vec<ConePair>) -> Result<(), DataSetError> {
        self.expect(b'(')?;
        let c = self.integer()?;
        self.expect(b',')?;
        let n_i = self.integer()?;
        self.expect(b')')?;
        let mut multiplicity = 1;
        if self.eat(b'^') {
            self.expect(b'[')?;
            let at = self.pos;
            multiplicity = self.integer()?;
            if multiplicity == 0 {
                return Err(DataSetError::Parse {
                    pos: at,
                    message: "multiplicity must be at least 1".into(),
                });
            }
            self.expect(b']')?;
        }
        for _ in 0..multiplicity {
            out.push(ConePair { c, n_i });
        }
        Ok(())
    }
}

/// Parses the tuple notation into a [`DataSet`] without validating it.
pub fn parse_data_set(text: &str) -> Result<DataSet, DataSetError> {
    let mut cur = Cursor::new(text);
    cur.expect(b'(')?;
    let n = cur.integer()?;
    cur.expect(b',')?;
    let g0 = cur.integer()?;
    let r = if cur.eat(b',') { cur.integer()? } else { 0 };
    cur.expect(b';')?;

    let mut pairs = Vec::new();
    match cur.peek() {
        Some(b')') => {}
        Some(b'-') => cur.pos += 1,
        _ => {
            cur.pair(&mut pairs)?;
            while cur.eat(b',') {
                cur.pair(&mut pairs)?;
            }
        }
    }
    cur.expect(b')')?;
    if cur.peek().is_some() {
        return Err(cur.error("trailing input after data set"));
    }
    Ok(DataSet { n, g0, r, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(list: &[(u64, u64)]) -> Vec<ConePair> {
        list.iter().map(|&(c, n_i)| ConePair { c, n_i }).collect()
    }

    #[test]
    fn order_ten() {
        let d = parse_data_set("(10,0;(1,2),(2,5),(1,10))").unwrap();
        assert_eq!(
            d,
            DataSet {
                n: 10,
                g0: 0,
                r: 0,
                pairs: pairs(&[(1, 2), (2, 5), (1, 10)])
            }
        );
    }

    #[test]
    fn multiplicity_is_unrolled() {
        let d = parse_data_set("(4,0;(1,2)^[2],(1,4),(3,4))").unwrap();
        assert_eq!(d.pairs, pairs(&[(1, 2), (1, 2), (1, 4), (3, 4)]));
    }

    #[test]
    fn free_rotation_form() {
        let d = parse_data_set("(2,1,1;)").unwrap();
        assert_eq!(
            d,
            DataSet {
                n: 2,
                g0: 1,
                r: 1,
                pairs: vec![]
            }
        );
        assert_eq!(parse_data_set("( 6 , 1 , 1 ; - )").unwrap().r, 1);
    }

    #[test]
    fn whitespace_is_ignored() {
        let d = parse_data_set(" ( 8, 0 ; (1, 2), (3, 8) ,(1,8) ) ").unwrap();
        assert_eq!(d.pairs, pairs(&[(1, 2), (3, 8), (1, 8)]));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_data_set("(") {
            Err(DataSetError::Parse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("unexpected {other:?}"),
        }
        match parse_data_set("(10,0;(1,2)(2,5))") {
            Err(DataSetError::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_data_set("(4,0;(1,2)^[0])").is_err());
        assert!(parse_data_set("(4,0;(1,2)) x").is_err());
        assert!(parse_data_set("(4,-1;)").is_err());
    }
}
