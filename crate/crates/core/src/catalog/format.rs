//! Text interchange format.
//!
//! ```text
//! ring F3xF3
//! add 3 3
//! mul 0 0 -> 1 0
//! mul 0 1 -> 0 0
//! mul 1 0 -> 0 0
//! mul 1 1 -> 0 1
//! unit 1 1
//! aut a0
//! gen 0 -> 0 1
//! gen 1 -> 1 0
//! group swap = a0
//! ```
//!
//! Generator indices are 0-based. A ring block without a `group` line yields
//! one instance with the trivial group.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Instance, Provenance};
use crate::error::{Error, Result};
use crate::groups::{close_group, AutomorphismGroup, RingAutomorphism, DEFAULT_GROUP_CAP};
use crate::ring::{Element, FiniteRing};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn invalid(name: &str, e: Error) -> Error {
    Error::Validation {
        name: name.to_string(),
        source: Box::new(e),
    }
}

fn numbers(line: usize, words: &[&str]) -> Result<Vec<u64>> {
    words
        .iter()
        .map(|w| w.parse::<u64>().map_err(|_| parse_err(line, format!("`{w}` is not a non-negative integer"))))
        .collect()
}

/// `i j -> c1 .. ck` or `i -> c1 .. ck`.
fn indexed(line: usize, rest: &str, arity: usize) -> Result<(Vec<usize>, Vec<u64>)> {
    let (lhs, rhs) = rest
        .split_once("->")
        .ok_or_else(|| parse_err(line, "expected `->`"))?;
    let idx: Vec<&str> = lhs.split_whitespace().collect();
    if idx.len() != arity {
        return Err(parse_err(line, format!("expected {arity} index(es) before `->`")));
    }
    let idx = numbers(line, &idx)?.into_iter().map(|i| i as usize).collect();
    let coeffs = numbers(line, &rhs.split_whitespace().collect::<Vec<_>>())?;
    Ok((idx, coeffs))
}

#[derive(Default)]
struct Block {
    start: usize,
    name: String,
    orders: Option<Vec<u64>>,
    table: HashMap<(usize, usize), Vec<u64>>,
    unit: Option<Vec<u64>>,
    auts: Vec<(String, usize, HashMap<usize, Vec<u64>>)>,
    groups: Vec<(String, usize, Vec<String>)>,
}

impl Block {
    fn rank(&self, line: usize) -> Result<usize> {
        self.orders
            .as_ref()
            .map(Vec::len)
            .ok_or_else(|| parse_err(line, "`add` must come before this line"))
    }

    fn check_len(&self, line: usize, v: &[u64]) -> Result<()> {
        let k = self.rank(line)?;
        if v.len() != k {
            return Err(parse_err(line, format!("expected {k} coefficients, found {}", v.len())));
        }
        Ok(())
    }

    fn finish(self, end: usize) -> Result<Vec<Instance>> {
        let orders = self
            .orders
            .clone()
            .ok_or_else(|| parse_err(self.start, format!("ring `{}` has no `add` line", self.name)))?;
        let k = orders.len();
        let mut table = vec![vec![Vec::new(); k]; k];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self
                    .table
                    .get(&(i, j))
                    .cloned()
                    .ok_or_else(|| parse_err(end, format!("ring `{}` is missing `mul {i} {j}`", self.name)))?;
            }
        }
        let ring = FiniteRing::validate(orders, table, self.unit.clone()).map_err(|e| invalid(&self.name, e))?;
        let mut auts: HashMap<&str, RingAutomorphism> = HashMap::new();
        for (name, line, gens) in &self.auts {
            let mut images = Vec::with_capacity(k);
            for i in 0..k {
                images.push(
                    gens.get(&i)
                        .cloned()
                        .ok_or_else(|| parse_err(*line, format!("automorphism `{name}` is missing `gen {i}`")))?,
                );
            }
            let sigma = RingAutomorphism::new(&ring, images).map_err(|e| invalid(name, e))?;
            auts.insert(name, sigma);
        }
        let groups = if self.groups.is_empty() {
            vec![("trivial".to_string(), self.start, Vec::new())]
        } else {
            self.groups
        };
        let mut out = Vec::new();
        for (gname, line, members) in groups {
            let gens: Vec<RingAutomorphism> = members
                .iter()
                .map(|m| {
                    auts.get(m.as_str())
                        .cloned()
                        .ok_or_else(|| parse_err(line, format!("unknown automorphism `{m}`")))
                })
                .collect::<Result<_>>()?;
            let group = close_group(&ring, &gens, DEFAULT_GROUP_CAP).map_err(|e| invalid(&gname, e))?;
            out.push(Instance::new(self.name.clone(), gname, ring.clone(), group, Provenance::File));
        }
        Ok(out)
    }
}

/// Parses every instance in `text`.
pub fn parse(text: &str) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let mut block: Option<Block> = None;
    let mut current_aut: Option<usize> = None;
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        if keyword == "ring" {
            if let Some(b) = block.take() {
                out.extend(b.finish(line - 1)?);
            }
            if rest.is_empty() {
                return Err(parse_err(line, "ring needs a name"));
            }
            block = Some(Block {
                start: line,
                name: rest.to_string(),
                ..Default::default()
            });
            current_aut = None;
            continue;
        }
        let b = block
            .as_mut()
            .ok_or_else(|| parse_err(line, "expected `ring <name>` first"))?;
        match keyword {
            "add" => {
                if b.orders.is_some() {
                    return Err(parse_err(line, "duplicate `add` line"));
                }
                let orders = numbers(line, &rest.split_whitespace().collect::<Vec<_>>())?;
                b.orders = Some(orders);
            }
            "mul" => {
                let (idx, c) = indexed(line, rest, 2)?;
                b.check_len(line, &c)?;
                let k = b.rank(line)?;
                if idx.iter().any(|&i| i >= k) {
                    return Err(parse_err(line, format!("generator index out of range 0..{k}")));
                }
                if b.table.insert((idx[0], idx[1]), c).is_some() {
                    return Err(parse_err(line, "duplicate `mul` line"));
                }
            }
            "unit" => {
                let c = numbers(line, &rest.split_whitespace().collect::<Vec<_>>())?;
                b.check_len(line, &c)?;
                b.unit = Some(c);
            }
            "aut" => {
                if rest.is_empty() {
                    return Err(parse_err(line, "aut needs a name"));
                }
                b.auts.push((rest.to_string(), line, HashMap::new()));
                current_aut = Some(b.auts.len() - 1);
            }
            "gen" => {
                let a = current_aut.ok_or_else(|| parse_err(line, "`gen` outside an `aut` block"))?;
                let (idx, c) = indexed(line, rest, 1)?;
                b.check_len(line, &c)?;
                let k = b.rank(line)?;
                if idx[0] >= k {
                    return Err(parse_err(line, format!("generator index out of range 0..{k}")));
                }
                if b.auts[a].2.insert(idx[0], c).is_some() {
                    return Err(parse_err(line, "duplicate `gen` line"));
                }
            }
            "group" => {
                let (name, members) = rest
                    .split_once('=')
                    .ok_or_else(|| parse_err(line, "expected `group <name> = <aut> ...`"))?;
                let name = name.trim();
                if name.is_empty() {
                    return Err(parse_err(line, "group needs a name"));
                }
                let members = members.split_whitespace().map(str::to_string).collect();
                b.groups.push((name.to_string(), line, members));
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(b) = block {
        out.extend(b.finish(last_line)?);
    }
    Ok(out)
}

fn join(x: &[u64]) -> String {
    x.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// Generators sorted by additive order (stable), automorphisms carried along
/// and listed in lexicographic order of their images.
pub fn canonical(ring: &FiniteRing, group: &AutomorphismGroup) -> (FiniteRing, Vec<Vec<Element>>) {
    let (sorted, perm) = ring.sorted_by_order();
    let move_el = |x: &Element| perm.iter().map(|&i| x[i]).collect::<Element>();
    let mut gens: Vec<Vec<Element>> = group
        .generators()
        .iter()
        .map(|g| perm.iter().map(|&i| move_el(&g.images()[i])).collect())
        .collect();
    gens.sort();
    gens.dedup();
    (sorted, gens)
}

/// Canonical text of one instance.
pub fn write_instance(inst: &Instance) -> String {
    let (ring, gens) = canonical(&inst.ring, &inst.group);
    let k = ring.rank();
    let mut s = String::new();
    writeln!(s, "ring {}", inst.ring_name).unwrap();
    writeln!(s, "add {}", join(ring.orders())).unwrap();
    for i in 0..k {
        for j in 0..k {
            writeln!(s, "mul {i} {j} -> {}", join(ring.structure(i, j))).unwrap();
        }
    }
    if let Some(u) = ring.identity() {
        writeln!(s, "unit {}", join(u)).unwrap();
    }
    let mut names = Vec::new();
    for (a, images) in gens.iter().enumerate() {
        writeln!(s, "aut a{a}").unwrap();
        for (i, img) in images.iter().enumerate() {
            writeln!(s, "gen {i} -> {}", join(img)).unwrap();
        }
        names.push(format!("a{a}"));
    }
    let members = if names.is_empty() {
        String::new()
    } else {
        format!(" {}", names.join(" "))
    };
    writeln!(s, "group {} ={members}", inst.group_name).unwrap();
    s
}

/// Canonical text of a list of instances, separated by blank lines.
pub fn write(instances: &[Instance]) -> String {
    instances.iter().map(write_instance).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# zero products on Z/4 x Z/2, negation on the first factor
ring zero Z/4 x Z/2
add 4 2
mul 0 0 -> 0 0
mul 0 1 -> 0 0
mul 1 0 -> 0 0
mul 1 1 -> 0 0
aut neg
gen 0 -> 3 0
gen 1 -> 0 1
group C2 = neg
group one =
";

    #[test]
    fn parses_blocks_and_groups() {
        let list = parse(SAMPLE).unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[0].group.order(), 2);
        assert_eq!(list[1].group.order(), 1);
        assert!(!list[0].ring.is_unital());
    }

    #[test]
    fn round_trip_is_stable() {
        let list = parse(SAMPLE).unwrap();
        let once = write(&list);
        let twice = write(&parse(&once).unwrap());
        assert_eq!(once, twice);
        // canonical order puts the order-2 generator first
        assert!(once.contains("add 2 4"));
    }

    #[test]
    fn errors_carry_lines() {
        let bad = SAMPLE.replace("mul 0 1 -> 0 0", "mul 0 1 => 0 0");
        match parse(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        let missing = SAMPLE.replace("mul 1 0 -> 0 0\n", "");
        assert!(matches!(parse(&missing), Err(Error::Parse { .. })));
        assert!(matches!(parse("add 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("ring x\nadd 2\nmul 0 0 -> 1 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn non_associative_is_a_validation_error() {
        // e0² = e1, e1·e0 = e0 but e0·e1 = 0 over F2
        let text = "ring bad\nadd 2 2\nmul 0 0 -> 0 1\nmul 0 1 -> 0 0\nmul 1 0 -> 1 0\nmul 1 1 -> 0 0\n";
        match parse(text) {
            Err(Error::Validation { source, .. }) => {
                assert!(matches!(*source, Error::NonAssociative { .. }), "{source:?}")
            }
            other => panic!("{other:?}"),
        }
    }
}
