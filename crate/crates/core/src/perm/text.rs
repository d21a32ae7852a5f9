//! 1-indexed text formats: cycle notation `(1,2,3)(4,5)`, image lines
//! `img: 2 3 1 5 4`, and group files (`degree n` then one permutation per
//! line; blank lines and `#` comments are ignored).

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Parses one permutation of the given degree.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("img:") {
        let images = rest
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .map(|v| v - 1)
                    .ok_or_else(|| Error::InvalidPermutation(format!("bad image entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.len() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: images.len(),
            });
        }
        return Permutation::new(images);
    }
    parse_cycles(text, degree)
}

fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::InvalidPermutation("empty permutation".into()));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::InvalidPermutation(format!("malformed cycle near `{rest}`")))?;
        let (inner, tail) = body;
        rest = tail;
        if inner.is_empty() {
            continue;
        }
        let cycle = inner
            .split(',')
            .map(|t| {
                let v: usize = t
                    .parse()
                    .map_err(|_| Error::InvalidPermutation(format!("bad point `{t}`")))?;
                if v == 0 || v > degree {
                    return Err(Error::PointOutOfRange {
                        point: v,
                        degree,
                    });
                }
                Ok(v - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
    }
    let mut touched = vec![false; degree];
    for c in &cycles {
        for &x in c {
            if std::mem::replace(&mut touched[x], true) {
                return Err(Error::InvalidPermutation(format!("repeated point {}", x + 1)));
            }
        }
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(degree, &refs)
}

/// Image-line form of a permutation.
pub fn format_image_line(p: &Permutation) -> String {
    let parts: Vec<String> = p.images().iter().map(|&y| (y as usize + 1).to_string()).collect();
    format!("img: {}", parts.join(" "))
}

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses a group file into its degree and generators.
pub fn parse_generators(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, content(l)));
    let (line_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or(Error::Parse {
            line: 1,
            message: "missing `degree n` header".into(),
        })?;
    let degree = header
        .strip_prefix("degree")
        .and_then(|d| d.trim().parse::<usize>().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `degree n`, found `{header}`"),
        })?;
    let mut gens = Vec::new();
    for (line, body) in lines {
        if body.is_empty() {
            continue;
        }
        let p = parse_permutation(body, degree).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        gens.push(p);
    }
    if gens.is_empty() {
        return Err(Error::Parse {
            line: line_no,
            message: "no generators".into(),
        });
    }
    Ok((degree, gens))
}

pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let (degree, gens) = parse_generators(text)?;
    PermGroup::new(degree, gens)
}

/// Writes a group file using image lines. The trivial group gets an
/// identity line, since a file without generators does not parse.
pub fn format_group_file(degree: usize, gens: &[Permutation]) -> String {
    let mut out = format!("degree {degree}\n");
    let identity = [Permutation::identity(degree)];
    let gens = if gens.is_empty() { &identity[..] } else { gens };
    for g in gens {
        out.push_str(&format_image_line(g));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_notations() {
        let g = parse_group_file("degree 3\n(1,2,3)").unwrap();
        assert_eq!(g.order(), 3);
        let d8 = parse_group_file("degree 4\nimg: 2 1 4 3\nimg: 2 3 4 1").unwrap();
        assert_eq!(d8.order(), 8);
        let p = parse_permutation("(1, 2)(3,4,5)", 5).unwrap();
        assert_eq!(p.to_cycle_string(), "(1,2)(3,4,5)");
        assert!(parse_permutation("()", 4).unwrap().is_identity());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_group_file("degree 3\n(1,2,2)").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("repeated point"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_group_file("# comment\ndegree 4\n\nimg: 1 1 2 3"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(parse_group_file("degree 4\n").is_err());
        assert!(parse_group_file("deg 4\n(1,2)").is_err());
    }

    #[test]
    fn round_trip() {
        let gens = vec![
            Permutation::from_cycles(6, &[&[0, 5, 2]]).unwrap(),
            Permutation::from_cycles(6, &[&[1, 3], &[4, 5]]).unwrap(),
        ];
        let (deg, back) = parse_generators(&format_group_file(6, &gens)).unwrap();
        assert_eq!(deg, 6);
        assert_eq!(back, gens);
    }
}
