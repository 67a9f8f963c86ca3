use super::{Arrow, Convention, Path, Presentation, Quiver, Relation};
use crate::error::{Error, Result};
use crate::linalg::{sparse, FieldSpec, Scalar};

fn err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '*')
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// field Q | field F <p>
/// composition function | diagram
/// vertices v1, v2, ...
/// arrow <name>: <src> -> <tgt>
/// relation <c1> <p1> [+|- <c2> <p2>]...
/// nilpotency <N>
/// ```
///
/// `#` starts a comment. Relations are validated for composability (under
/// the declared convention) and for parallelism of their terms.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut field = None;
    let mut convention = None;
    let mut quiver = Quiver::default();
    let mut raw_relations: Vec<(usize, String)> = Vec::new();
    let mut nilpotency = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match keyword {
            "field" => {
                if field.is_some() {
                    return err(line, "field declared twice");
                }
                field = Some(parse_field(rest).or_else(|m| err(line, m))?);
            }
            "composition" => {
                if convention.is_some() {
                    return err(line, "composition declared twice");
                }
                convention = Some(match rest {
                    "function" => Convention::Function,
                    "diagram" => Convention::Diagram,
                    other => return err(line, format!("unknown composition convention '{other}'")),
                });
            }
            "vertices" => {
                if !quiver.vertices.is_empty() {
                    return err(line, "vertices declared twice");
                }
                for v in rest.split(',').map(str::trim) {
                    if !valid_name(v) {
                        return err(line, format!("invalid vertex name '{v}'"));
                    }
                    if quiver.vertex_index(v).is_some() {
                        return err(line, format!("duplicate vertex '{v}'"));
                    }
                    quiver.vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let Some((name, ends)) = rest.split_once(':') else {
                    return err(line, "expected 'arrow <name>: <src> -> <tgt>'");
                };
                let name = name.trim();
                let Some((src, tgt)) = ends.split_once("->") else {
                    return err(line, "expected 'arrow <name>: <src> -> <tgt>'");
                };
                if !valid_name(name) {
                    return err(line, format!("invalid arrow name '{name}'"));
                }
                if quiver.arrow_index(name).is_some() {
                    return err(line, format!("duplicate arrow '{name}'"));
                }
                let lookup = |v: &str| {
                    quiver
                        .vertex_index(v.trim())
                        .ok_or_else(|| Error::Parse {
                            line,
                            message: format!("unknown vertex '{}'", v.trim()),
                        })
                };
                let (source, target) = (lookup(src)?, lookup(tgt)?);
                quiver.arrows.push(Arrow {
                    label: name.to_string(),
                    source,
                    target,
                });
            }
            "relation" => raw_relations.push((line, rest.to_string())),
            "nilpotency" => {
                if nilpotency.is_some() {
                    return err(line, "nilpotency declared twice");
                }
                match rest.parse::<usize>() {
                    Ok(n) if n >= 1 => nilpotency = Some(n),
                    _ => return err(line, format!("nilpotency bound must be a positive integer, got '{rest}'")),
                }
            }
            other => return err(line, format!("unknown directive '{other}'")),
        }
    }

    let field = field.unwrap_or(FieldSpec::Rationals);
    let convention = convention.unwrap_or(Convention::Function);
    if quiver.vertices.is_empty() {
        return err(last_line.max(1), "no vertices declared");
    }
    let Some(nilpotency) = nilpotency else {
        return err(last_line.max(1), "missing 'nilpotency <N>'");
    };
    let mut relations = Vec::new();
    for (line, text) in raw_relations {
        if let Some(r) = parse_relation(&quiver, field, convention, line, &text)? {
            relations.push(r);
        }
    }
    Ok(Presentation {
        field,
        convention,
        quiver,
        relations,
        nilpotency,
    })
}

fn parse_field(rest: &str) -> std::result::Result<FieldSpec, String> {
    let compact: String = rest.split_whitespace().collect();
    if compact == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = compact.strip_prefix('F') {
        let p: u32 = p.parse().map_err(|_| format!("invalid characteristic '{p}'"))?;
        return FieldSpec::prime(p).map_err(|e| e.to_string());
    }
    Err(format!("unknown field '{rest}'"))
}

fn parse_coefficient(field: FieldSpec, token: &str) -> Option<std::result::Result<Scalar, String>> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: i64 = num.parse().ok()?;
    let den: i64 = match den.parse() {
        Ok(d) => d,
        Err(_) => return Some(Err(format!("invalid coefficient '{token}'"))),
    };
    Some(
        field
            .from_ratio(num, den)
            .ok_or_else(|| format!("coefficient '{token}' has a denominator that vanishes in {field}")),
    )
}

/// Parses `c1 p1 +|- c2 p2 ...` into function-order terms. A path is a
/// sequence of arrow names or a single trivial path `e_<vertex>`.
pub(crate) fn parse_combination(
    quiver: &Quiver,
    field: FieldSpec,
    convention: Convention,
    line: usize,
    text: &str,
) -> Result<Vec<(Scalar, Path)>> {
    enum Item {
        Arrow(usize),
        Vertex(usize),
    }
    let mut raw: Vec<(Scalar, Vec<Item>)> = Vec::new();
    let mut sign = field.one();
    let mut coeff: Option<Scalar> = None;
    let mut items: Vec<Item> = Vec::new();
    let mut expect_term = true;
    for token in text.split_whitespace() {
        match token {
            "+" | "-" => {
                if !items.is_empty() {
                    let c = coeff.take().unwrap_or_else(|| field.one());
                    raw.push((&sign * &c, std::mem::take(&mut items)));
                } else if coeff.is_some() || !expect_term || !raw.is_empty() {
                    return err(line, format!("unexpected '{token}'"));
                }
                sign = if token == "-" { -&field.one() } else { field.one() };
                expect_term = true;
            }
            _ => {
                if items.is_empty() && coeff.is_none() {
                    if let Some(c) = parse_coefficient(field, token) {
                        coeff = Some(c.or_else(|m| err(line, m))?);
                        continue;
                    }
                }
                if let Some(a) = quiver.arrow_index(token) {
                    items.push(Item::Arrow(a));
                } else if let Some(v) = token.strip_prefix("e_").and_then(|v| quiver.vertex_index(v)) {
                    items.push(Item::Vertex(v));
                } else {
                    return err(line, format!("unknown arrow '{token}'"));
                }
                expect_term = false;
            }
        }
    }
    if items.is_empty() {
        if coeff.is_some() || !raw.is_empty() {
            return err(line, "dangling coefficient or sign");
        }
        return err(line, "empty expression");
    }
    let c = coeff.take().unwrap_or_else(|| field.one());
    raw.push((&sign * &c, items));

    let mut terms = Vec::new();
    for (c, items) in raw {
        let path = match items.as_slice() {
            [Item::Vertex(v)] => Path::trivial(*v),
            _ => {
                let mut arrows = Vec::new();
                for it in &items {
                    match it {
                        Item::Arrow(a) => arrows.push(*a),
                        Item::Vertex(_) => return err(line, "a trivial path cannot be part of a longer path"),
                    }
                }
                to_path(quiver, convention, line, &arrows)?
            }
        };
        terms.push((c, path));
    }
    Ok(terms)
}

/// Returns `None` when every coefficient vanishes in the field.
fn parse_relation(
    quiver: &Quiver,
    field: FieldSpec,
    convention: Convention,
    line: usize,
    text: &str,
) -> Result<Option<Relation>> {
    let paths = parse_combination(quiver, field, convention, line, text)?;
    for (_, path) in &paths {
        if path.len() < 2 {
            return err(line, format!("relation term '{}' has length < 2", path.label(quiver, convention)));
        }
    }
    let (s0, t0) = (paths[0].1.source(quiver), paths[0].1.target(quiver));
    for (_, p) in &paths[1..] {
        if p.source(quiver) != s0 || p.target(quiver) != t0 {
            return err(
                line,
                format!(
                    "non-parallel relation: '{}' runs {} -> {} but '{}' runs {} -> {}",
                    paths[0].1.label(quiver, convention),
                    quiver.vertices[s0],
                    quiver.vertices[t0],
                    p.label(quiver, convention),
                    quiver.vertices[p.source(quiver)],
                    quiver.vertices[p.target(quiver)]
                ),
            );
        }
    }
    let terms = merge_terms(paths);
    if terms.is_empty() {
        return Ok(None);
    }
    Ok(Some(Relation {
        terms,
        line,
        text: text.split_whitespace().collect::<Vec<_>>().join(" "),
    }))
}

/// Merges repeated paths and drops vanishing coefficients.
pub(crate) fn merge_terms(paths: Vec<(Scalar, Path)>) -> Vec<(Scalar, Path)> {
    let mut distinct: Vec<Path> = paths.iter().map(|(_, p)| p.clone()).collect();
    distinct.sort();
    distinct.dedup();
    let vec = sparse::collect(
        paths
            .iter()
            .map(|(c, p)| (distinct.binary_search(p).unwrap(), c.clone()))
            .collect(),
    );
    vec.into_iter().map(|(i, c)| (c, distinct[i].clone())).collect()
}

/// Converts a written arrow sequence to a function-order path, checking
/// composability and reporting both conventions' verdicts on failure.
fn to_path(quiver: &Quiver, convention: Convention, line: usize, written: &[usize]) -> Result<Path> {
    let function_order: Vec<usize> = match convention {
        Convention::Function => written.to_vec(),
        Convention::Diagram => written.iter().rev().copied().collect(),
    };
    let composable = |seq: &[usize]| seq.windows(2).all(|w| quiver.arrows[w[0]].source == quiver.arrows[w[1]].target);
    if !composable(&function_order) {
        let pair = written
            .windows(2)
            .find(|w| {
                let (a, b) = (&quiver.arrows[w[0]], &quiver.arrows[w[1]]);
                match convention {
                    Convention::Function => a.source != b.target,
                    Convention::Diagram => a.target != b.source,
                }
            })
            .expect("some pair fails");
        let (a, b) = (&quiver.arrows[pair[0]], &quiver.arrows[pair[1]]);
        let verdict = |ok: bool| if ok { "composable" } else { "not composable" };
        return err(
            line,
            format!(
                "non-composable term: '{} {}' ({}; function order: {}, diagram order: {})",
                a.label,
                b.label,
                match convention {
                    Convention::Function => "composition function",
                    Convention::Diagram => "composition diagram",
                },
                verdict(a.source == b.target),
                verdict(a.target == b.source)
            ),
        );
    }
    let last = *function_order.last().expect("nonempty");
    Ok(Path {
        vertex: quiver.arrows[last].source,
        arrows: function_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = "field Q\nvertices v\narrow x: v -> v\nrelation x x\nnilpotency 2\n";

    #[test]
    fn parses_dual_numbers() {
        let p = parse_presentation(DUAL).unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.nilpotency, 2);
        assert_eq!(p.convention, Convention::Function);
    }

    #[test]
    fn rejects_non_parallel() {
        let text = "vertices 1, 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a b - b a\nnilpotency 3\n";
        let e = parse_presentation(text).unwrap_err();
        match e {
            Error::Parse { line, message } => {
                assert_eq!(line, 4);
                assert!(message.contains("non-parallel"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_both_conventions() {
        let text = "vertices 1, 2, 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a b\nnilpotency 3\n";
        let Error::Parse { message, .. } = parse_presentation(text).unwrap_err() else { panic!() };
        assert!(message.contains("function order: not composable"), "{message}");
        assert!(message.contains("diagram order: composable"), "{message}");
        let ok = text.replace("vertices", "composition diagram\nvertices");
        assert!(parse_presentation(&ok).is_ok());
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "vertices v\narrow x: v -> v\narrow y: v -> v\nrelation 2 x y - 1/2 y x + x x\nnilpotency 3\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relations[0].terms.len(), 3);
        let f2 = parse_presentation(&text.replace("vertices", "field F 2\nvertices"));
        assert!(f2.is_err());
    }

    #[test]
    fn render_round_trips() {
        let p = parse_presentation(DUAL).unwrap();
        assert_eq!(parse_presentation(&p.render()).unwrap().render(), p.render());
        let f2 = p.with_field(FieldSpec::Prime(2)).unwrap();
        assert_eq!(f2.field, FieldSpec::Prime(2));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let Error::Parse { line, .. } = parse_presentation("vertices v\nbogus\nnilpotency 2").unwrap_err() else {
            panic!()
        };
        assert_eq!(line, 2);
        assert!(parse_presentation("vertices v\narrow x: v -> w\nnilpotency 2").is_err());
    }
}
