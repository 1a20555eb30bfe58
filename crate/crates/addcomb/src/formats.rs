//! Text formats for groups, sets, characters, 0/1 tables and counting instances.
//!
//! Set files hold one element per line. In a product group an element is a
//! comma-separated coordinate tuple; over an interval it is a single integer.
//! Blank lines and lines starting with `#` are ignored.

use std::fs;
use std::path::Path;

use addcomb_core::gridnorm::{BitTable, CountingInstance, OrientedGraph};
use addcomb_core::sumfree::IntegerSet;
use addcomb_core::{Character, FiniteAbelianGroup};
use serde::{Deserialize, Serialize};

use crate::failure::{CliResult, Failure};

/// Where elements live: a product of cyclic groups, or `[N]` embedded in `ℤ/(2N+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Moduli(Vec<u64>),
    Interval(u64),
}

impl GroupSpec {
    pub fn group(&self) -> CliResult<FiniteAbelianGroup> {
        Ok(match self {
            GroupSpec::Moduli(m) => FiniteAbelianGroup::new(m)?,
            GroupSpec::Interval(n) => FiniteAbelianGroup::cyclic(
                n.checked_mul(2)
                    .and_then(|v| v.checked_add(1))
                    .ok_or_else(|| Failure::config("interval too long"))?,
            )?,
        })
    }

    /// `3,5` style description of the ambient group.
    pub fn describe(&self) -> String {
        match self {
            GroupSpec::Moduli(m) => m.iter().map(u64::to_string).collect::<Vec<_>>().join("x"),
            GroupSpec::Interval(n) => format!("[{n}]->Z/{}", 2 * n + 1),
        }
    }
}

pub fn parse_moduli(s: &str) -> CliResult<Vec<u64>> {
    let out: Vec<u64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Failure::config(format!("bad modulus {t:?} in {s:?}")))
        })
        .collect::<CliResult<_>>()?;
    if out.is_empty() || out.contains(&0) {
        return Err(Failure::config(format!("moduli must be positive: {s:?}")));
    }
    Ok(out)
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_int(tok: &str, line: usize) -> CliResult<i64> {
    tok.trim()
        .parse::<i64>()
        .map_err(|_| Failure::config(format!("line {line}: {tok:?} is not an integer")))
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))
}

/// Element indices of a set file under `spec`.
pub fn parse_group_set(text: &str, spec: &GroupSpec) -> CliResult<Vec<usize>> {
    let group = spec.group()?;
    let mut out = Vec::new();
    for (line, l) in data_lines(text) {
        let idx = match spec {
            GroupSpec::Interval(n) => {
                let v = parse_int(l, line)?;
                if v < 1 || v as u64 > *n {
                    return Err(Failure::config(format!(
                        "line {line}: {v} outside [1, {n}]"
                    )));
                }
                v as usize
            }
            GroupSpec::Moduli(_) => {
                let coords: Vec<i64> = l
                    .split(',')
                    .map(|t| parse_int(t, line))
                    .collect::<CliResult<_>>()?;
                if coords.len() != group.rank() {
                    return Err(Failure::config(format!(
                        "line {line}: expected {} coordinates, got {}",
                        group.rank(),
                        coords.len()
                    )));
                }
                group.index_of(&group.element(&coords)?)?
            }
        };
        out.push(idx);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn format_group_set(group: &FiniteAbelianGroup, set: &[usize]) -> String {
    set.iter()
        .map(|&x| {
            group
                .coords_of(x)
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
                + "\n"
        })
        .collect()
}

pub fn parse_integer_set(text: &str) -> CliResult<IntegerSet> {
    let v: Vec<i64> = data_lines(text)
        .map(|(line, l)| parse_int(l, line))
        .collect::<CliResult<_>>()?;
    Ok(IntegerSet::new(v))
}

pub fn format_integer_set(set: &IntegerSet) -> String {
    set.iter().map(|v| format!("{v}\n")).collect()
}

/// Characters written as coefficient tuples separated by `;`, e.g. `1,0;2,3`.
pub fn parse_characters(s: &str, group: &FiniteAbelianGroup) -> CliResult<Vec<Character>> {
    let chars: Vec<Character> = s
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let coeffs: Vec<i64> = t
                .split(',')
                .map(|c| parse_int(c, 0))
                .collect::<CliResult<_>>()?;
            Ok(group.character(&coeffs)?)
        })
        .collect::<CliResult<_>>()?;
    if chars.is_empty() {
        return Err(Failure::config("at least one frequency is required"));
    }
    Ok(chars)
}

pub fn format_character(ch: &Character) -> String {
    ch.coeffs
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Rows of `0`/`1` digits; spaces and commas between digits are ignored.
pub fn parse_table(text: &str) -> CliResult<BitTable> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (line, l) in data_lines(text) {
        let row: Vec<bool> = l
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Failure::config(format!(
                    "line {line}: table entries must be 0 or 1, got {c:?}"
                ))),
            })
            .collect::<CliResult<_>>()?;
        rows.push(row);
    }
    table_from_rows(&rows)
}

fn table_from_rows(rows: &[Vec<bool>]) -> CliResult<BitTable> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        return Err(Failure::config("table is empty"));
    }
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure::config("table rows have different lengths"));
    }
    let flat: Vec<bool> = rows.concat();
    Ok(BitTable::from_bools(rows.len(), cols, &flat)?)
}

/// JSON description of a counting instance. Table rows are `0`/`1` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub set_sizes: Vec<usize>,
    pub tables: Vec<Vec<String>>,
}

impl InstanceFile {
    pub fn build(&self) -> CliResult<CountingInstance> {
        let graph = OrientedGraph::new(self.vertices, self.edges.clone())?;
        let tables = self
            .tables
            .iter()
            .map(|rows| parse_table(&rows.join("\n")))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(CountingInstance::new(
            graph,
            self.set_sizes.clone(),
            tables,
        )?)
    }

    pub fn from_instance(inst: &CountingInstance) -> Self {
        InstanceFile {
            vertices: inst.graph().vertex_count(),
            edges: inst.graph().edges().to_vec(),
            set_sizes: inst.set_sizes().to_vec(),
            tables: inst
                .tables()
                .iter()
                .map(|t| {
                    (0..t.rows())
                        .map(|x| {
                            (0..t.cols())
                                .map(|y| if t.get(x, y) { '1' } else { '0' })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn parse_instance(text: &str) -> CliResult<CountingInstance> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Failure::config(format!("instance file: {e}")))?;
    file.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sets() {
        let spec = GroupSpec::Moduli(vec![3, 5]);
        let set = parse_group_set("# comment\n1,2\n\n0,0\n4,-1\n", &spec).unwrap();
        // (4,-1) reduces to (1,4)
        assert_eq!(set, vec![0, 7, 9]);
        let g = spec.group().unwrap();
        assert_eq!(
            parse_group_set(&format_group_set(&g, &set), &spec).unwrap(),
            set
        );
        assert!(matches!(
            parse_group_set("1\n", &spec),
            Err(Failure::InvalidConfig(_))
        ));
        assert!(parse_group_set("a,b\n", &spec).is_err());

        let interval = GroupSpec::Interval(10);
        assert_eq!(interval.group().unwrap().order(), 21);
        assert_eq!(parse_group_set("3\n1\n3\n", &interval).unwrap(), vec![1, 3]);
        assert!(parse_group_set("11\n", &interval).is_err());
    }

    #[test]
    fn moduli_and_characters() {
        assert_eq!(parse_moduli("3, 5").unwrap(), vec![3, 5]);
        assert!(parse_moduli("3,0").is_err());
        assert!(parse_moduli("x").is_err());
        let g = FiniteAbelianGroup::new(&[3, 5]).unwrap();
        let chars = parse_characters("1,2;0,-1", &g).unwrap();
        assert_eq!(chars[1].coeffs, vec![0, 4]);
        assert_eq!(format_character(&chars[0]), "1,2");
        assert!(parse_characters("1", &g).is_err());
        assert!(parse_characters("", &g).is_err());
    }

    #[test]
    fn tables_and_instances() {
        let t = parse_table("0 1 1\n1,0,0\n").unwrap();
        assert_eq!((t.rows(), t.cols(), t.ones()), (2, 3, 3));
        assert!(parse_table("01\n1\n").is_err());
        assert!(parse_table("02\n").is_err());
        let json = r#"{"vertices":2,"edges":[[0,1]],"set_sizes":[2,3],"tables":[["011","100"]]}"#;
        let inst = parse_instance(json).unwrap();
        assert_eq!(
            InstanceFile::from_instance(&inst).tables[0],
            vec!["011", "100"]
        );
        assert!(parse_instance("{").is_err());
    }

    #[test]
    fn integer_sets() {
        let s = parse_integer_set("5\n-2\n5\n").unwrap();
        assert_eq!(s.as_slice(), &[-2, 5]);
        assert_eq!(format_integer_set(&s), "-2\n5\n");
        assert!(parse_integer_set("1.5\n").is_err());
    }
}
