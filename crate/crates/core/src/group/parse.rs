//! Text grammar for group specs and element literals.
//!
//! | group        | spec            | element literals                          |
//! |--------------|-----------------|-------------------------------------------|
//! | Z_n          | `zn:30`         | `7`, `-1` (reduced mod n)                 |
//! | product      | `zprod:2,3,5`   | `(1,2,0)`                                 |
//! | dihedral     | `dihedral:8`    | `e`, `r3`, `s`, `r3s` (= r^3 s)           |
//! | symmetric    | `sym:5`         | one-line `[2,3,1]` or cycles `(1 2)(3 4)` |
//! | GL_2(F_p)    | `gl2:7`         | `[[1,1],[0,1]]`                           |
//! | free         | `free:2:12`     | `e`, `x1 x2^-1 x1^3`                      |

use std::str::FromStr;

use super::{Element, GroupSpec, Perm, Word};
use crate::error::{Error, Result};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim().parse().map_err(|_| perr(format!("expected {what}, got `{s}`")))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').ok_or_else(|| perr(format!("group spec `{s}` needs `kind:params`")))?;
        match kind.trim() {
            "zn" => GroupSpec::cyclic(parse_u64(rest, "modulus")?),
            "zprod" => {
                let moduli = rest.split(',').map(|m| parse_u64(m, "modulus")).collect::<Result<Vec<_>>>()?;
                GroupSpec::product_of_cyclic(moduli)
            }
            "dihedral" => GroupSpec::dihedral(parse_u64(rest, "polygon size")?),
            "sym" => {
                let n = parse_u64(rest, "degree")?;
                GroupSpec::symmetric(u8::try_from(n).map_err(|_| Error::InvalidSpec(format!("degree {n} too large")))?)
            }
            "gl2" => {
                let p = parse_u64(rest, "prime")?;
                GroupSpec::general_linear2(u32::try_from(p).map_err(|_| Error::InvalidSpec(format!("prime {p} too large")))?)
            }
            "free" => {
                let (rank, len) = rest.split_once(':').ok_or_else(|| perr("free group spec is `free:<rank>:<max length>`"))?;
                let rank = parse_u64(rank, "rank")?;
                GroupSpec::free(
                    u32::try_from(rank).map_err(|_| Error::InvalidSpec(format!("rank {rank} too large")))?,
                    parse_u64(len, "max word length")? as usize,
                )
            }
            other => Err(perr(format!("unknown group kind `{other}`"))),
        }
    }
}

fn parse_signed(s: &str) -> Result<i128> {
    s.trim().parse().map_err(|_| perr(format!("expected an integer, got `{s}`")))
}

fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

fn parse_perm(s: &str, n: usize) -> Result<Perm> {
    let s = s.trim();
    if s == "e" || s == "()" {
        return Ok(Perm::identity(n));
    }
    if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
        let imgs = body
            .split(',')
            .map(|x| parse_u64(x, "point").and_then(|v| v.checked_sub(1).ok_or_else(|| perr("points are 1-based"))))
            .map(|r| r.map(|v| v as usize))
            .collect::<Result<Vec<_>>>()?;
        if imgs.len() != n {
            return Err(perr(format!("one-line permutation `{s}` must list {n} images")));
        }
        return Perm::from_images(&imgs).ok_or_else(|| perr(format!("`{s}` is not a permutation")));
    }
    // Cycle notation; cycles are composed right-to-left like any product.
    let mut acc = Perm::identity(n);
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| perr(format!("bad cycle notation `{s}`")))?;
        let close = open.find(')').ok_or_else(|| perr(format!("unclosed cycle in `{s}`")))?;
        let points = open[..close]
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v = parse_u64(t, "point")?;
                if v == 0 || v as usize > n {
                    Err(perr(format!("point {v} outside 1..={n}")))
                } else {
                    Ok(v as usize - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut img: Vec<usize> = (0..n).collect();
        for (i, &p) in points.iter().enumerate() {
            img[p] = points[(i + 1) % points.len()];
        }
        let cycle = Perm::from_images(&img).ok_or_else(|| perr(format!("repeated point in cycle `{s}`")))?;
        acc = acc.compose(&cycle);
        rest = open[close + 1..].trim_start();
    }
    Ok(acc)
}

fn parse_word(s: &str, rank: u32) -> Result<Word> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for tok in s.split_whitespace() {
        let (gen, exp) = match tok.split_once('^') {
            Some((g, e)) => (g, parse_signed(e)?),
            None => (tok, 1),
        };
        let idx = gen
            .strip_prefix('x')
            .ok_or_else(|| perr(format!("generator `{gen}` should look like x1")))?;
        let idx = parse_u64(idx, "generator index")?;
        if idx == 0 || idx > rank as u64 {
            return Err(perr(format!("generator x{idx} outside x1..x{rank}")));
        }
        if exp.unsigned_abs() > 1 << 20 {
            return Err(perr(format!("exponent {exp} too large")));
        }
        let letter = if exp < 0 { -(idx as i32) } else { idx as i32 };
        letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    Ok(Word::reduced(letters).expect("letters are nonzero"))
}

impl GroupSpec {
    /// Parses an element literal in this group's grammar.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        let e = match self {
            GroupSpec::Cyclic { n } => {
                let body = t.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(t);
                Element::Residues(vec![reduce(parse_signed(body)?, *n)])
            }
            GroupSpec::ProductOfCyclic { moduli } => {
                let body = t.strip_prefix('(').and_then(|b| b.strip_suffix(')'));
                let body = match body {
                    Some(b) => b,
                    None if moduli.len() == 1 => t,
                    None => return Err(perr(format!("expected a residue tuple like (1,2), got `{t}`"))),
                };
                let parts = body.split(',').map(parse_signed).collect::<Result<Vec<_>>>()?;
                if parts.len() != moduli.len() {
                    return Err(perr(format!("tuple `{t}` needs {} entries", moduli.len())));
                }
                Element::Residues(parts.into_iter().zip(moduli).map(|(x, m)| reduce(x, *m)).collect())
            }
            GroupSpec::Dihedral { n } => {
                let (body, reflect) = match t.strip_suffix('s') {
                    Some(b) => (b, true),
                    None => (t, false),
                };
                let rot = match body {
                    "" | "e" => 0,
                    "r" => 1 % n,
                    _ => {
                        let k = body.strip_prefix('r').ok_or_else(|| perr(format!("bad dihedral element `{t}`")))?;
                        reduce(parse_signed(k.trim_start_matches('^'))?, *n)
                    }
                };
                if t == "es" {
                    return Err(perr("bad dihedral element `es`"));
                }
                Element::Dihedral { rot, reflect }
            }
            GroupSpec::Symmetric { n } => Element::Perm(parse_perm(t, *n as usize)?),
            GroupSpec::GeneralLinear2 { p } => {
                let flat: String = t.chars().filter(|c| !c.is_whitespace()).collect();
                let body = flat
                    .strip_prefix("[[")
                    .and_then(|b| b.strip_suffix("]]"))
                    .ok_or_else(|| perr(format!("expected a matrix like [[1,1],[0,1]], got `{t}`")))?;
                let (r0, r1) = body.split_once("],[").ok_or_else(|| perr(format!("bad matrix `{t}`")))?;
                let entries = r0.split(',').chain(r1.split(',')).map(parse_signed).collect::<Result<Vec<_>>>()?;
                if entries.len() != 4 {
                    return Err(perr(format!("matrix `{t}` must be 2x2")));
                }
                let m = [0, 1, 2, 3].map(|i| reduce(entries[i], *p as u64) as u32);
                Element::Matrix(m)
            }
            GroupSpec::Free { rank, .. } => Element::Word(parse_word(t, *rank)?),
        };
        self.check(&e)?;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings_round_trip() {
        for s in ["zn:30", "zprod:2,3,5", "dihedral:8", "sym:5", "gl2:7", "free:2:12"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("cube:3".parse::<GroupSpec>().is_err());
        assert!("zn".parse::<GroupSpec>().is_err());
        assert!("free:2".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn element_literals() {
        let g: GroupSpec = "zprod:5,7".parse().unwrap();
        assert_eq!(g.parse_element("(1, -1)").unwrap(), Element::Residues(vec![1, 6]));
        assert!(g.parse_element("(1)").is_err());

        let d: GroupSpec = "dihedral:8".parse().unwrap();
        assert_eq!(d.parse_element("r3s").unwrap(), Element::Dihedral { rot: 3, reflect: true });
        assert_eq!(d.parse_element("s").unwrap(), Element::Dihedral { rot: 0, reflect: true });
        assert_eq!(d.parse_element("e").unwrap(), d.identity());
        assert_eq!(d.parse_element("r9").unwrap().to_string(), "r1");

        let s: GroupSpec = "sym:3".parse().unwrap();
        assert_eq!(s.parse_element("(1 2 3)").unwrap(), s.parse_element("[2,3,1]").unwrap());
        // (1 2)(2 3) read right to left is (1 2 3)
        assert_eq!(s.parse_element("(1 2)(2 3)").unwrap().to_string(), "[2,3,1]");
        assert!(s.parse_element("[1,1,2]").is_err());
        assert!(s.parse_element("(1 4)").is_err());

        let gl: GroupSpec = "gl2:5".parse().unwrap();
        assert!(gl.parse_element("[[1,2],[2,4]]").is_err(), "singular matrix");

        let f: GroupSpec = "free:2:4".parse().unwrap();
        assert_eq!(f.parse_element("x1^2 x1^-1 x2").unwrap().to_string(), "x1 x2");
        assert!(f.parse_element("x1^5").is_err(), "longer than the cap");
        assert!(f.parse_element("x3").is_err());
    }

    #[test]
    fn display_parses_back() {
        for s in ["zn:12", "zprod:2,3", "dihedral:5", "sym:4", "gl2:3"] {
            let g: GroupSpec = s.parse().unwrap();
            for e in g.enumerate().unwrap() {
                assert_eq!(g.parse_element(&e.to_string()).unwrap(), e, "{s}: {e}");
            }
        }
    }
}
