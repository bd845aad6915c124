//! Deterministic group constructors, the builtin corpus and the group-file
//! loader.
//!
//! Group-file format (UTF-8, line oriented, `#` starts a comment line):
//!
//! ```text
//! format perm
//! degree 3
//! gen (1 2)
//! gen (1 2 3)
//! ```
//!
//! or
//!
//! ```text
//! format table
//! order 2
//! row 0 1
//! row 1 0
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::{is_prime, Group, DEFAULT_MAX_ORDER};
use crate::perm::Perm;

pub const CORPUS_VERSION: &str = "fusionlab-corpus-1";

fn power_label(names: &[(&str, usize)]) -> String {
    let parts: Vec<String> = names
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(n, e)| {
            if *e == 1 {
                n.to_string()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn mod_pow(base: usize, exp: usize, m: usize) -> usize {
    (0..exp).fold(1 % m, |acc, _| acc * base % m)
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::Parameter("cyclic order must be positive".into()));
    }
    Group::from_closure(
        &format!("C{n}"),
        0usize,
        &[1 % n],
        |a, b| (a + b) % n,
        |&a| power_label(&[("a", a)]),
        DEFAULT_MAX_ORDER,
    )
}

/// `C_n ⋊ C_m` with `b⁻¹ a b = a^k`; elements `a^x b^y`.
pub fn semidirect_cyclic(n: usize, m: usize, k: usize) -> Result<Group> {
    semidirect_cyclic_named(&format!("C{n}:C{m}"), n, m, k, ("a", "b"))
}

fn semidirect_cyclic_named(
    id: &str,
    n: usize,
    m: usize,
    k: usize,
    names: (&'static str, &'static str),
) -> Result<Group> {
    if n == 0 || m == 0 {
        return Err(Error::Parameter(
            "semidirect factors must be nontrivial orders".into(),
        ));
    }
    if mod_pow(k % n, m, n) != 1 % n {
        return Err(Error::Parameter(format!(
            "action x -> x^{k} does not have order dividing {m} modulo {n}"
        )));
    }
    // b^y a^x = a^(x·k^-y) b^y, so that b⁻¹ a b = a^k
    let kinv = (1..=n.max(1))
        .find(|&t| (k % n) * t % n == 1 % n)
        .unwrap_or(0);
    Group::from_closure(
        id,
        (0usize, 0usize),
        &[(1 % n, 0), (0, 1 % m)],
        move |&(x1, y1), &(x2, y2)| ((x1 + mod_pow(kinv, y1, n) * x2) % n, (y1 + y2) % m),
        move |&(x, y)| power_label(&[(names.0, x), (names.1, y)]),
        DEFAULT_MAX_ORDER,
    )
}

/// Dihedral group of order `2n`.
pub fn dihedral(order: usize) -> Result<Group> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "dihedral order {order} must be even"
        )));
    }
    let n = order / 2;
    semidirect_cyclic_named(&format!("D{order}"), n, 2, n - 1, ("r", "s"))
}

/// Generalized quaternion group of order `2^n`, `3 ≤ n ≤ 5`.
pub fn generalized_quaternion(order: usize) -> Result<Group> {
    if !matches!(order, 8 | 16 | 32) {
        return Err(Error::Parameter(format!(
            "generalized quaternion order {order} must be 8, 16 or 32"
        )));
    }
    let n = order / 2; // order of x
    let h = n / 2; // y^2 = x^h
    Group::from_closure(
        &format!("Q{order}"),
        (0usize, 0usize),
        &[(1, 0), (0, 1)],
        move |&(i, j), &(k, l)| {
            if j == 0 {
                ((i + k) % n, l)
            } else {
                let x = (i + n - k) % n;
                if l == 1 {
                    ((x + h) % n, 0)
                } else {
                    (x, 1)
                }
            }
        },
        |&(i, j)| power_label(&[("x", i), ("y", j)]),
        DEFAULT_MAX_ORDER,
    )
}

pub fn quaternion() -> Result<Group> {
    generalized_quaternion(8)
}

pub fn symmetric(n: usize) -> Result<Group> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[vec![1, 2]])?);
    }
    if n >= 3 {
        gens.push(Perm::from_cycles(n, &[(1..=n).collect()])?);
    }
    Group::from_permutation_generators(&format!("S{n}"), n.max(1), &gens, DEFAULT_MAX_ORDER)
}

pub fn alternating(n: usize) -> Result<Group> {
    let gens = (3..=n)
        .map(|i| Perm::from_cycles(n, &[vec![1, 2, i]]))
        .collect::<Result<Vec<_>>>()?;
    Group::from_permutation_generators(&format!("A{n}"), n.max(1), &gens, DEFAULT_MAX_ORDER)
}

pub fn elementary_abelian(p: usize, k: usize) -> Result<Group> {
    if !is_prime(p) {
        return Err(Error::Parameter(format!("{p} is not prime")));
    }
    let gens: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| usize::from(i == j)).collect())
        .collect();
    Group::from_closure(
        &format!("C{p}^{k}"),
        vec![0usize; k],
        &gens,
        |a, b| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect(),
        |v| {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        },
        DEFAULT_MAX_ORDER,
    )
}

/// Heisenberg group mod `p` (order `p³`, exponent `p` for odd `p`).
pub fn extraspecial_exp_p(p: usize) -> Result<Group> {
    if !is_prime(p) || p == 2 {
        return Err(Error::Parameter(format!("{p} must be an odd prime")));
    }
    Group::from_closure(
        &format!("He{p}"),
        (0usize, 0usize, 0usize),
        &[(1, 0, 0), (0, 1, 0)],
        move |&(a, b, c), &(x, y, z)| ((a + x) % p, (b + y) % p, (c + z + a * y) % p),
        |&(a, b, c)| format!("[{a},{b},{c}]"),
        DEFAULT_MAX_ORDER,
    )
}

pub fn direct_product(a: &Group, b: &Group) -> Group {
    let id = format!("{}x{}", a.id(), b.id());
    a.direct_product(b, &id)
}

type Mat2 = [usize; 4];

fn mat_mul(a: &Mat2, b: &Mat2, p: usize) -> Mat2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn mat_order(m: &Mat2, p: usize) -> Option<usize> {
    let id = [1, 0, 0, 1];
    let mut x = *m;
    for k in 1..=p * p * p * p {
        if x == id {
            return Some(k);
        }
        x = mat_mul(&x, m, p);
    }
    None
}

/// `(C_p × C_p) ⋊ ⟨M⟩` for an invertible 2×2 matrix `M = [a b; c d]` over
/// `F_p`, acting on column vectors.
pub fn semidirect_matrix(p: usize, matrix: Mat2) -> Result<Group> {
    if !is_prime(p) {
        return Err(Error::Parameter(format!("{p} is not prime")));
    }
    let m: Mat2 = matrix.map(|x| x % p);
    let det = (m[0] * m[3] % p + p - m[1] * m[2] % p) % p;
    if det == 0 {
        return Err(Error::Parameter("matrix is singular".into()));
    }
    let order = mat_order(&m, p).expect("invertible matrices have finite order");
    let mut powers = vec![[1, 0, 0, 1]];
    for _ in 1..order {
        let last = *powers.last().unwrap();
        powers.push(mat_mul(&last, &m, p));
    }
    Group::from_closure(
        &format!("C{p}^2:C{order}"),
        (0usize, 0usize, 0usize),
        &[(1, 0, 0), (0, 1, 0), (0, 0, 1 % order)],
        move |&(x1, y1, j1), &(x2, y2, j2)| {
            let a = &powers[j1];
            (
                (x1 + a[0] * x2 + a[1] * y2) % p,
                (y1 + a[2] * x2 + a[3] * y2) % p,
                (j1 + j2) % order,
            )
        },
        |&(x, y, j)| {
            if j == 0 {
                format!("({x},{y})")
            } else {
                format!("({x},{y})m^{j}")
            }
        },
        DEFAULT_MAX_ORDER,
    )
}

/// `SL(2,3)` as 2×2 matrices over `F_3`.
pub fn sl23() -> Result<Group> {
    Group::from_closure(
        "SL23",
        [1usize, 0, 0, 1],
        &[[1, 1, 0, 1], [1, 0, 1, 1]],
        |a, b| mat_mul(a, b, 3),
        |m| format!("[{} {}; {} {}]", m[0], m[1], m[2], m[3]),
        DEFAULT_MAX_ORDER,
    )
}

/// Evaluates a family expression such as `semidirect_cyclic(7,3,2)` or
/// `direct_product(symmetric(3), cyclic(2))`.
pub fn build(expr: &str) -> Result<Group> {
    let expr = expr.trim();
    let open = expr
        .find('(')
        .ok_or_else(|| Error::Parameter(format!("expected family(args) in {expr:?}")))?;
    if !expr.ends_with(')') {
        return Err(Error::Parameter(format!(
            "unbalanced parentheses in {expr:?}"
        )));
    }
    let name = expr[..open].trim();
    let args = split_args(&expr[open + 1..expr.len() - 1])?;
    let num = |i: usize| -> Result<usize> {
        args.get(i)
            .ok_or_else(|| Error::Parameter(format!("{name} needs argument {}", i + 1)))?
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parameter(format!("bad numeric argument in {expr:?}")))
    };
    let want = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Parameter(format!("{name} takes {n} arguments")))
        }
    };
    match name {
        "cyclic" => want(1).and_then(|_| cyclic(num(0)?)),
        "dihedral" => want(1).and_then(|_| dihedral(num(0)?)),
        "quaternion" => want(0).and_then(|_| quaternion()),
        "generalized_quaternion" => want(1).and_then(|_| generalized_quaternion(num(0)?)),
        "symmetric" => want(1).and_then(|_| symmetric(num(0)?)),
        "alternating" => want(1).and_then(|_| alternating(num(0)?)),
        "elementary_abelian" => want(2).and_then(|_| elementary_abelian(num(0)?, num(1)?)),
        "extraspecial_exp_p" => want(1).and_then(|_| extraspecial_exp_p(num(0)?)),
        "semidirect_cyclic" => want(3).and_then(|_| semidirect_cyclic(num(0)?, num(1)?, num(2)?)),
        "semidirect_matrix" => {
            want(5).and_then(|_| semidirect_matrix(num(0)?, [num(1)?, num(2)?, num(3)?, num(4)?]))
        }
        "sl23" => want(0).and_then(|_| sl23()),
        "direct_product" => {
            want(2)?;
            Ok(direct_product(&build(&args[0])?, &build(&args[1])?))
        }
        other => Err(Error::Parameter(format!("unknown group family {other:?}"))),
    }
}

fn split_args(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parameter(format!("unbalanced parentheses in {s:?}")));
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// Names and family expressions of the builtin corpus, in published order.
pub const BUILTIN: &[(&str, &str)] = &[
    ("C1", "cyclic(1)"),
    ("C2", "cyclic(2)"),
    ("C3", "cyclic(3)"),
    ("C4", "cyclic(4)"),
    ("C5", "cyclic(5)"),
    ("C6", "cyclic(6)"),
    ("C7", "cyclic(7)"),
    ("C8", "cyclic(8)"),
    ("C9", "cyclic(9)"),
    ("C10", "cyclic(10)"),
    ("C11", "cyclic(11)"),
    ("C12", "cyclic(12)"),
    ("C13", "cyclic(13)"),
    ("C14", "cyclic(14)"),
    ("C15", "cyclic(15)"),
    ("C16", "cyclic(16)"),
    ("C17", "cyclic(17)"),
    ("C18", "cyclic(18)"),
    ("C19", "cyclic(19)"),
    ("C20", "cyclic(20)"),
    ("C21", "cyclic(21)"),
    ("C22", "cyclic(22)"),
    ("C23", "cyclic(23)"),
    ("C24", "cyclic(24)"),
    ("V4", "elementary_abelian(2,2)"),
    ("C2^3", "elementary_abelian(2,3)"),
    ("C2^4", "elementary_abelian(2,4)"),
    ("C3^2", "elementary_abelian(3,2)"),
    ("C3^3", "elementary_abelian(3,3)"),
    ("C6xC2", "direct_product(cyclic(6), cyclic(2))"),
    ("S3", "symmetric(3)"),
    ("S4", "symmetric(4)"),
    ("S5", "symmetric(5)"),
    ("A4", "alternating(4)"),
    ("A5", "alternating(5)"),
    ("D8", "dihedral(8)"),
    ("D10", "dihedral(10)"),
    ("D12", "dihedral(12)"),
    ("D14", "dihedral(14)"),
    ("D16", "dihedral(16)"),
    ("D18", "dihedral(18)"),
    ("Q8", "quaternion()"),
    ("Q16", "generalized_quaternion(16)"),
    ("Q32", "generalized_quaternion(32)"),
    ("SL23", "sl23()"),
    ("He3", "extraspecial_exp_p(3)"),
    ("C9:C3", "semidirect_cyclic(9,3,4)"),
    ("C7:C3", "semidirect_cyclic(7,3,2)"),
    ("C13:C3", "semidirect_cyclic(13,3,3)"),
    ("C3:C4", "semidirect_cyclic(3,4,2)"),
    ("C5:C4", "semidirect_cyclic(5,4,2)"),
    ("C3^2:C2", "semidirect_matrix(3,2,0,0,2)"),
    ("C3^2:C4", "semidirect_matrix(3,0,2,1,0)"),
    ("C5^2:C3", "semidirect_matrix(5,0,4,1,4)"),
    ("S3xC2", "direct_product(symmetric(3), cyclic(2))"),
    ("S3xC3", "direct_product(symmetric(3), cyclic(3))"),
    ("S3xS3", "direct_product(symmetric(3), symmetric(3))"),
    ("A4xC2", "direct_product(alternating(4), cyclic(2))"),
    ("D8xC2", "direct_product(dihedral(8), cyclic(2))"),
    ("Q8xC3", "direct_product(quaternion(), cyclic(3))"),
    ("A5xC2", "direct_product(alternating(5), cyclic(2))"),
];

/// One builtin group by name.
pub fn builtin(name: &str) -> Result<Group> {
    let (_, expr) = BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parameter(format!("unknown builtin group {name:?}")))?;
    Ok(build(expr)?.with_id(name))
}

pub fn builtin_corpus() -> Result<Vec<Group>> {
    BUILTIN.iter().map(|(name, _)| builtin(name)).collect()
}

/// Parses the line-oriented group-file format.
pub fn parse_group_file(id: &str, text: &str, max_order: usize) -> Result<Group> {
    enum Format {
        Perm,
        Table,
    }
    let syntax = |line: usize, message: String| Error::Syntax { line, message };
    let mut format = None;
    let mut size: Option<(usize, usize)> = None; // (value, line)
    let mut gens = Vec::new();
    let mut rows = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match (keyword, &format) {
            ("format", None) => {
                format = Some(match rest {
                    "perm" => Format::Perm,
                    "table" => Format::Table,
                    other => return Err(syntax(line_no, format!("unknown format {other:?}"))),
                })
            }
            ("format", Some(_)) => {
                return Err(syntax(line_no, "duplicate format directive".into()))
            }
            (_, None) => return Err(syntax(line_no, "first directive must be `format`".into())),
            ("degree", Some(Format::Perm)) | ("order", Some(Format::Table)) => {
                if size.is_some() {
                    return Err(syntax(line_no, format!("duplicate {keyword} directive")));
                }
                let value = rest
                    .parse::<usize>()
                    .map_err(|_| syntax(line_no, format!("expected a number after {keyword}")))?;
                if value == 0 {
                    return Err(syntax(line_no, format!("{keyword} must be positive")));
                }
                size = Some((value, line_no));
            }
            ("gen", Some(Format::Perm)) => {
                let (degree, _) =
                    size.ok_or_else(|| syntax(line_no, "`degree` must precede `gen`".into()))?;
                let perm = parse_gen(degree, rest).map_err(|m| syntax(line_no, m))?;
                gens.push(perm);
            }
            ("row", Some(Format::Table)) => {
                let (order, _) =
                    size.ok_or_else(|| syntax(line_no, "`order` must precede `row`".into()))?;
                let row = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| syntax(line_no, "row entries must be integers".into()))?;
                if row.len() != order {
                    return Err(syntax(
                        line_no,
                        format!("row has {} entries, expected {order}", row.len()),
                    ));
                }
                if rows.len() == order {
                    return Err(syntax(line_no, "too many rows".into()));
                }
                rows.push(row);
            }
            (other, _) => return Err(syntax(line_no, format!("unexpected directive {other:?}"))),
        }
    }
    match format {
        None => Err(syntax(
            last_line.max(1),
            "missing `format` directive".into(),
        )),
        Some(Format::Perm) => {
            let (degree, _) =
                size.ok_or_else(|| syntax(last_line.max(1), "missing `degree` directive".into()))?;
            Group::from_permutation_generators(id, degree, &gens, max_order)
        }
        Some(Format::Table) => {
            let (order, _) =
                size.ok_or_else(|| syntax(last_line.max(1), "missing `order` directive".into()))?;
            if order > max_order {
                return Err(Error::ResourceLimit {
                    group: id.to_string(),
                    what: "group order",
                    limit: max_order,
                });
            }
            if rows.len() != order {
                return Err(syntax(
                    last_line.max(1),
                    format!("expected {order} rows, found {}", rows.len()),
                ));
            }
            Group::from_cayley_table(id, &rows)
        }
    }
}

/// Strict cycle parser: only `(`, `)`, digits and spaces are allowed.
fn parse_gen(degree: usize, text: &str) -> std::result::Result<Perm, String> {
    if text.is_empty() {
        return Err("empty generator".into());
    }
    if let Some(c) = text
        .chars()
        .find(|c| !(c.is_ascii_digit() || *c == '(' || *c == ')' || *c == ' '))
    {
        return Err(format!("unexpected character {c:?} in generator"));
    }
    let mut depth = 0;
    for c in text.chars() {
        match c {
            '(' if depth == 0 => depth = 1,
            ')' if depth == 1 => depth = 0,
            '(' | ')' => return Err("mismatched parentheses".into()),
            d if d.is_ascii_digit() && depth == 0 => {
                return Err("trailing garbage outside cycle".into())
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unclosed cycle".into());
    }
    Perm::parse_cycles(degree, text).map_err(|e| e.to_string())
}

pub fn load_group_file(path: &Path, max_order: usize) -> Result<Group> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "group".into());
    parse_group_file(&id, &text, max_order)
}
