use std::collections::BTreeSet;

use crate::error::{parse_err, Error, Result};

/// CNF formula; literals are signed 1-based variable ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Precondition(format!("clause {} is empty", i + 1)));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(Error::Precondition(format!("clause {} has literal {l} outside 1..={num_vars}", i + 1)));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `values[v - 1]` is the value of variable `v`.
    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| literal_true(l, values)))
    }
}

pub(crate) fn literal_true(l: i64, values: &[bool]) -> bool {
    values[l.unsigned_abs() as usize - 1] == (l > 0)
}

/// DIMACS CNF: `c` comments, a `p cnf <vars> <clauses>` header, clauses ended by `0`.
pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" {
                return parse_err(i + 1, "expected `p cnf <vars> <clauses>`");
            }
            let n = f[2].parse().or_else(|_| parse_err(i + 1, "bad variable count"))?;
            let m = f[3].parse().or_else(|_| parse_err(i + 1, "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        if header.is_none() {
            return parse_err(i + 1, "clause before header");
        }
        for tok in line.split_whitespace() {
            let l: i64 = tok.parse().or_else(|_| parse_err(i + 1, format!("bad literal `{tok}`")))?;
            if l == 0 {
                if cur.is_empty() {
                    return parse_err(i + 1, "empty clause");
                }
                clauses.push(std::mem::take(&mut cur));
            } else {
                cur.push(l);
            }
        }
    }
    if !cur.is_empty() {
        clauses.push(cur);
    }
    let Some((n, m)) = header else { return parse_err(1, "missing `p cnf` header") };
    if clauses.len() != m {
        return parse_err(0, format!("header promises {m} clauses, found {}", clauses.len()));
    }
    CnfFormula::new(n, clauses)
}

/// Assignment as signed literals (`v`-prefixed lines and a trailing `0` allowed);
/// unlisted variables are false.
pub fn parse_literals(text: &str, num_vars: usize) -> Result<Vec<bool>> {
    let mut values = vec![false; num_vars];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('c') {
            continue;
        }
        for tok in line.split_whitespace().filter(|t| *t != "v") {
            let l: i64 = tok.parse().or_else(|_| parse_err(i + 1, format!("bad literal `{tok}`")))?;
            if l == 0 {
                continue;
            }
            let v = l.unsigned_abs() as usize;
            if v > num_vars {
                return parse_err(i + 1, format!("variable {v} out of range"));
            }
            values[v - 1] = l > 0;
        }
    }
    Ok(values)
}

/// k color classes of n vertices each; vertices are `(class, index)`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McisInstance {
    pub k: usize,
    pub n: usize,
    edges: BTreeSet<((usize, usize), (usize, usize))>,
}

impl McisInstance {
    pub fn new(k: usize, n: usize, edges: &[((usize, usize), (usize, usize))]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a.0 >= k || b.0 >= k || a.1 >= n || b.1 >= n {
                return Err(Error::Precondition(format!("edge {a:?}-{b:?} out of range")));
            }
            if a.0 == b.0 {
                return Err(Error::Precondition(format!("edge {a:?}-{b:?} inside one class")));
            }
            set.insert(if a < b { (a, b) } else { (b, a) });
        }
        Ok(McisInstance { k, n, edges: set })
    }

    pub fn has_edge(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.edges.contains(&if a < b { (a, b) } else { (b, a) })
    }

    /// Is `selection[i]` (one index per class) pairwise non-adjacent?
    pub fn is_solution(&self, selection: &[usize]) -> bool {
        selection.len() == self.k
            && selection.iter().all(|&x| x < self.n)
            && (0..self.k).all(|i| (i + 1..self.k).all(|j| !self.has_edge((i, selection[i]), (j, selection[j]))))
    }
}

/// `p mcis <k> <n>` then `e <class>.<index> <class>.<index>` lines, 1-based.
pub fn parse_mcis(text: &str) -> Result<McisInstance> {
    let mut header = None;
    let mut edges = Vec::new();
    let vertex = |tok: &str, line: usize| -> Result<(usize, usize)> {
        let (c, i) = tok.split_once('.').ok_or(Error::Parse { line, msg: format!("expected class.index, got `{tok}`") })?;
        let c: usize = c.parse().or_else(|_| parse_err(line, "bad class"))?;
        let i: usize = i.parse().or_else(|_| parse_err(line, "bad index"))?;
        if c == 0 || i == 0 {
            return parse_err(line, "classes and indices are 1-based");
        }
        Ok((c - 1, i - 1))
    };
    for (i, line) in text.lines().enumerate() {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.first() {
            None | Some(&"c") => {}
            Some(&"p") => {
                if f.len() != 4 || f[1] != "mcis" {
                    return parse_err(i + 1, "expected `p mcis <k> <n>`");
                }
                let k: usize = f[2].parse().or_else(|_| parse_err(i + 1, "bad k"))?;
                let n: usize = f[3].parse().or_else(|_| parse_err(i + 1, "bad n"))?;
                header = Some((k, n));
            }
            Some(&"e") if f.len() == 3 => edges.push((vertex(f[1], i + 1)?, vertex(f[2], i + 1)?)),
            _ => return parse_err(i + 1, format!("unrecognised line `{line}`")),
        }
    }
    let (k, n) = header.ok_or(Error::Parse { line: 1, msg: "missing `p mcis` header".into() })?;
    McisInstance::new(k, n, &edges)
}

/// One 1-based index per class, whitespace separated.
pub fn parse_selection(text: &str, inst: &McisInstance) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('c') {
            continue;
        }
        for tok in line.split_whitespace() {
            let x: usize = tok.parse().or_else(|_| parse_err(i + 1, format!("bad index `{tok}`")))?;
            if x == 0 || x > inst.n {
                return parse_err(i + 1, format!("index {x} outside 1..={}", inst.n));
            }
            out.push(x - 1);
        }
    }
    if out.len() != inst.k {
        return parse_err(0, format!("expected {} indices, got {}", inst.k, out.len()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnf_roundtrip() {
        let f = parse_cnf("c x\np cnf 3 2\n1 -2 0\n2 3\n 0\n").unwrap();
        assert_eq!(f.clauses, vec![vec![1, -2], vec![2, 3]]);
        assert!(f.satisfied_by(&[true, true, false]));
        assert!(!f.satisfied_by(&[false, true, false]));
        assert!(parse_cnf("p cnf 2 1\n0\n").is_err());
        assert!(parse_cnf("p cnf 2 1\n3 0\n").is_err());
        assert_eq!(parse_literals("v 1 -2 3 0", 3).unwrap(), vec![true, false, true]);
    }

    #[test]
    fn mcis_parse() {
        let inst = parse_mcis("p mcis 2 2\ne 1.1 2.2\ne 1.2 2.1\ne 1.2 2.2\n").unwrap();
        assert!(inst.has_edge((1, 1), (0, 1)));
        assert!(inst.is_solution(&[0, 0]));
        assert!(!inst.is_solution(&[1, 1]));
        assert_eq!(parse_selection("1 1", &inst).unwrap(), vec![0, 0]);
        assert!(parse_mcis("p mcis 2 2\ne 1.1 1.2\n").is_err());
    }
}
