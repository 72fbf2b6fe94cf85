//! Space spec grammar: `circle`, `sphere:<n>`, `surface:<g>`, `cpn:<n>`,
//! `torus:<n>`, `convex:<n>` and `product(<spec>, <spec>, …)`.

use std::fmt;
use std::str::FromStr;

use super::CatalogError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceSpec {
    Circle,
    Sphere(u32),
    Surface(u32),
    Cpn(u32),
    Torus(u32),
    Convex(u32),
    Product(Vec<SpaceSpec>),
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Circle => write!(f, "circle"),
            SpaceSpec::Sphere(n) => write!(f, "sphere:{n}"),
            SpaceSpec::Surface(g) => write!(f, "surface:{g}"),
            SpaceSpec::Cpn(n) => write!(f, "cpn:{n}"),
            SpaceSpec::Torus(n) => write!(f, "torus:{n}"),
            SpaceSpec::Convex(n) => write!(f, "convex:{n}"),
            SpaceSpec::Product(parts) => {
                write!(f, "product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for SpaceSpec {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let spec = parser.spec()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(spec)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> CatalogError {
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        CatalogError::BadSpec {
            position: self.pos,
            message: format!("{message} (found {found})"),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        (start, self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<u32, CatalogError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a nonnegative integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| CatalogError::BadSpec {
            position: start,
            message: format!("integer `{digits}` out of range"),
        })
    }

    fn spec(&mut self) -> Result<SpaceSpec, CatalogError> {
        let (start, word) = self.word();
        match word.as_str() {
            "circle" => Ok(SpaceSpec::Circle),
            "product" => {
                if !self.eat('(') {
                    return Err(self.error("expected `(` after `product`"));
                }
                let mut parts = vec![self.spec()?];
                while self.eat(',') {
                    parts.push(self.spec()?);
                }
                if !self.eat(')') {
                    return Err(self.error("expected `,` or `)`"));
                }
                if parts.len() < 2 {
                    return Err(CatalogError::BadSpec {
                        position: start,
                        message: "product needs at least two factors".into(),
                    });
                }
                Ok(SpaceSpec::Product(parts))
            }
            "sphere" | "surface" | "cpn" | "torus" | "convex" => {
                if !self.eat(':') {
                    return Err(self.error(&format!("expected `:` after `{word}`")));
                }
                let n = self.number()?;
                Ok(match word.as_str() {
                    "sphere" => SpaceSpec::Sphere(n),
                    "surface" => SpaceSpec::Surface(n),
                    "cpn" => SpaceSpec::Cpn(n),
                    "torus" => SpaceSpec::Torus(n),
                    _ => SpaceSpec::Convex(n),
                })
            }
            "" => Err(self.error("expected a space name")),
            other => Err(CatalogError::BadSpec {
                position: start,
                message: format!(
                    "unknown space `{other}`; expected circle, sphere, surface, cpn, torus, convex or product"
                ),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        assert_eq!("circle".parse::<SpaceSpec>().unwrap(), SpaceSpec::Circle);
        assert_eq!("sphere:3".parse::<SpaceSpec>().unwrap(), SpaceSpec::Sphere(3));
        assert_eq!(" torus : 4 ".parse::<SpaceSpec>().unwrap(), SpaceSpec::Torus(4));
        assert_eq!(
            "product( sphere:2 ,product(circle, convex:2))".parse::<SpaceSpec>().unwrap(),
            SpaceSpec::Product(vec![
                SpaceSpec::Sphere(2),
                SpaceSpec::Product(vec![SpaceSpec::Circle, SpaceSpec::Convex(2)]),
            ])
        );
    }

    #[test]
    fn display_roundtrips() {
        for s in ["circle", "cpn:2", "product(sphere:2,torus:3,surface:1)"] {
            assert_eq!(s.parse::<SpaceSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn errors_report_positions() {
        let pos = |s: &str| match s.parse::<SpaceSpec>() {
            Err(CatalogError::BadSpec { position, .. }) => position,
            other => panic!("expected a parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos("sphere"), 6);
        assert_eq!(pos("sphere:x"), 7);
        assert_eq!(pos("blob:2"), 0);
        assert_eq!(pos("product(circle;circle)"), 14);
        assert_eq!(pos("circle extra"), 7);
        assert_eq!(pos("product(circle)"), 0);
        assert_eq!(pos(""), 0);
    }
}
