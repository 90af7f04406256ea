//! Named group families and the descriptor mini-language.
//!
//! Grammar: `descriptor := term ("x" term)*` where a term is one of the
//! atoms `C n`, `D n`, `Q n`, `S n`, `A n`, `H p`, `ES(p, m, sign)` or
//! `table:<path>`. Atoms are case-insensitive and whitespace between tokens
//! is ignored. `n` is always the group order except for `S n` / `A n`
//! (degree) and `H p` / `ES(p, m, ...)` (prime and width).

use std::fmt;

use crate::group::{close_permutations, Elem, GroupTable};
use crate::{Error, Result, DEFAULT_ORDER_CAP};

/// Which of the two extraspecial types of a given order to build: for odd
/// `p`, `Plus` has exponent `p` and `Minus` exponent `p^2`; for `p = 2`,
/// `Plus` is the central product of dihedral factors and `Minus` swaps one
/// factor for the quaternion group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Parsed form of a group descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    /// `C n`: cyclic of order `n >= 1`.
    Cyclic(u64),
    /// `D n`: dihedral of order `n` (even, `n >= 2`).
    Dihedral(u64),
    /// `Q n`: generalized quaternion of order `n = 2^k >= 8`.
    Quaternion(u64),
    /// `S n`: symmetric group on `n` points.
    Symmetric(u32),
    /// `A n`: alternating group on `n` points.
    Alternating(u32),
    /// `H p`: Heisenberg group of order `p^3` (upper unitriangular 3x3
    /// matrices over the field with `p` elements).
    Heisenberg(u64),
    /// `ES(p, m, sign)`: extraspecial group of order `p^(1+2m)`.
    Extraspecial { p: u64, m: u32, sign: Sign },
    /// `A x B`.
    Product(Box<GroupDescriptor>, Box<GroupDescriptor>),
    /// `table:<path>`: defer to the Cayley-table file loader.
    TableFile(String),
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(n) => write!(f, "C{n}"),
            GroupDescriptor::Dihedral(n) => write!(f, "D{n}"),
            GroupDescriptor::Quaternion(n) => write!(f, "Q{n}"),
            GroupDescriptor::Symmetric(n) => write!(f, "S{n}"),
            GroupDescriptor::Alternating(n) => write!(f, "A{n}"),
            GroupDescriptor::Heisenberg(p) => write!(f, "H{p}"),
            GroupDescriptor::Extraspecial { p, m, sign } => write!(f, "ES({p},{m},{sign})"),
            GroupDescriptor::Product(a, b) => write!(f, "{a} x {b}"),
            GroupDescriptor::TableFile(path) => write!(f, "table:{path}"),
        }
    }
}

impl std::str::FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupDescriptor> {
        parse_descriptor(s)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        let mut out = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            out.push(self.bump().unwrap().to_ascii_lowercase());
        }
        if out.is_empty() {
            Err(self.error("expected a group atom"))
        } else {
            Ok((out, start))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        digits.parse().map_err(|_| Error::Parse {
            offset: start,
            message: "integer too large".into(),
        })
    }
}

/// Parses a descriptor string, reporting syntax errors with a byte offset
/// and rejecting semantically invalid parameters (non-prime `p`, odd
/// dihedral orders, quaternion orders that are not powers of two, ...).
pub fn parse_descriptor(text: &str) -> Result<GroupDescriptor> {
    let mut cur = Cursor::new(text);
    let desc = parse_product(&mut cur)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.error("expected `x` or end of input"));
    }
    Ok(desc)
}

fn parse_product(cur: &mut Cursor) -> Result<GroupDescriptor> {
    let mut acc = parse_atom(cur)?;
    loop {
        cur.skip_ws();
        let save = cur.pos;
        match cur.peek() {
            Some('x') | Some('X') => {
                cur.bump();
                // `x` must be a lone token, not the head of an atom name
                if matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    cur.pos = save;
                    return Err(cur.error("expected `x` or end of input"));
                }
                let rhs = parse_atom(cur)?;
                acc = GroupDescriptor::Product(Box::new(acc), Box::new(rhs));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_atom(cur: &mut Cursor) -> Result<GroupDescriptor> {
    let (name, start) = cur.ident()?;
    match name.as_str() {
        "c" => {
            let n = cur.integer()?;
            if n == 0 {
                return Err(Error::Descriptor("C requires order >= 1".into()));
            }
            Ok(GroupDescriptor::Cyclic(n))
        }
        "d" => {
            let n = cur.integer()?;
            if n < 2 || n % 2 != 0 {
                return Err(Error::Descriptor(format!(
                    "D takes the group order, which must be even and >= 2, got {n}"
                )));
            }
            Ok(GroupDescriptor::Dihedral(n))
        }
        "q" => {
            let n = cur.integer()?;
            if n < 8 || !n.is_power_of_two() {
                return Err(Error::Descriptor(format!(
                    "Q requires an order 2^k >= 8, got {n}"
                )));
            }
            Ok(GroupDescriptor::Quaternion(n))
        }
        "s" => {
            let n = cur.integer()?;
            if n == 0 {
                return Err(Error::Descriptor("S requires degree >= 1".into()));
            }
            Ok(GroupDescriptor::Symmetric(n as u32))
        }
        "a" => {
            let n = cur.integer()?;
            if n == 0 {
                return Err(Error::Descriptor("A requires degree >= 1".into()));
            }
            Ok(GroupDescriptor::Alternating(n as u32))
        }
        "h" => {
            let p = cur.integer()?;
            if !is_prime(p) {
                return Err(Error::Descriptor(format!("H requires a prime, got {p}")));
            }
            Ok(GroupDescriptor::Heisenberg(p))
        }
        "es" => {
            cur.expect('(')?;
            let p = cur.integer()?;
            cur.expect(',')?;
            let m = cur.integer()?;
            cur.skip_ws();
            let sign = if cur.peek() == Some(',') {
                cur.bump();
                cur.skip_ws();
                match cur.bump() {
                    Some('+') => Sign::Plus,
                    Some('-') => Sign::Minus,
                    _ => return Err(cur.error("expected `+` or `-`")),
                }
            } else {
                Sign::Plus
            };
            cur.expect(')')?;
            if !is_prime(p) {
                return Err(Error::Descriptor(format!("ES requires a prime, got {p}")));
            }
            if m == 0 || m > u32::MAX as u64 {
                return Err(Error::Descriptor(format!("ES requires m >= 1, got {m}")));
            }
            Ok(GroupDescriptor::Extraspecial { p, m: m as u32, sign })
        }
        "table" => {
            cur.expect(':')?;
            let start = cur.pos;
            while matches!(cur.peek(), Some(c) if !c.is_whitespace()) {
                cur.bump();
            }
            if cur.pos == start {
                return Err(cur.error("expected a file path after `table:`"));
            }
            Ok(GroupDescriptor::TableFile(cur.text[start..cur.pos].to_string()))
        }
        _ => Err(Error::Parse {
            offset: start,
            message: format!("unknown group atom `{name}`"),
        }),
    }
}

impl GroupDescriptor {
    /// Order of the group the descriptor denotes, when it can be computed
    /// without building anything (`table:` files cannot).
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupDescriptor::Cyclic(n)
            | GroupDescriptor::Dihedral(n)
            | GroupDescriptor::Quaternion(n) => Some(*n),
            GroupDescriptor::Symmetric(n) => factorial(*n),
            GroupDescriptor::Alternating(n) => {
                let f = factorial(*n)?;
                Some(if *n >= 2 { f / 2 } else { f })
            }
            GroupDescriptor::Heisenberg(p) => p.checked_pow(3),
            GroupDescriptor::Extraspecial { p, m, .. } => p.checked_pow(1 + 2 * m),
            GroupDescriptor::Product(a, b) => a.order()?.checked_mul(b.order()?),
            GroupDescriptor::TableFile(_) => None,
        }
    }
}

fn factorial(n: u32) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Builds the descriptor's table under the default order cap.
pub fn build(desc: &GroupDescriptor) -> Result<GroupTable> {
    build_with_cap(desc, DEFAULT_ORDER_CAP)
}

/// Builds the descriptor's table, failing before any allocation if the
/// predicted order exceeds `cap`.
pub fn build_with_cap(desc: &GroupDescriptor, cap: usize) -> Result<GroupTable> {
    if let Some(order) = desc.order() {
        if order > cap as u64 {
            return Err(Error::OrderCapExceeded { cap });
        }
    }
    match desc {
        GroupDescriptor::Cyclic(n) => cyclic_table(*n),
        GroupDescriptor::Dihedral(n) => dihedral_table(*n),
        GroupDescriptor::Quaternion(n) => quaternion_table(*n),
        GroupDescriptor::Symmetric(n) => symmetric_table(*n, cap),
        GroupDescriptor::Alternating(n) => alternating_table(*n, cap),
        GroupDescriptor::Heisenberg(p) => heisenberg_table(*p),
        GroupDescriptor::Extraspecial { p, m, sign } => extraspecial_table(*p, *m, *sign, cap),
        GroupDescriptor::Product(a, b) => {
            let left = build_with_cap(a, cap)?;
            let right = build_with_cap(b, cap)?;
            left.direct_product(&right, cap)
        }
        GroupDescriptor::TableFile(path) => {
            let table = crate::io::load_table(std::path::Path::new(path))?;
            if table.order() > cap {
                return Err(Error::OrderCapExceeded { cap });
            }
            Ok(table)
        }
    }
}

/// Cyclic group of order `n`, `mul(i, j) = i + j mod n`.
pub fn cyclic_table(n: u64) -> Result<GroupTable> {
    let n = n as usize;
    let mut mul = vec![0 as Elem; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = ((i + j) % n) as Elem;
        }
    }
    let gens = if n > 1 { vec![1_u16] } else { Vec::new() };
    Ok(GroupTable::from_mul_unchecked(n, mul, gens))
}

/// Dihedral group of the given (even) order. Element `i + m*j` is `r^i s^j`
/// with `m = order/2`; generators are `r` (index 1) and `s` (index `m`).
pub fn dihedral_table(order: u64) -> Result<GroupTable> {
    assert!(order >= 2 && order % 2 == 0, "dihedral order must be even");
    let n = order as usize;
    let m = n / 2;
    let enc = |i: usize, j: usize| i + m * j;
    let mut mul = vec![0 as Elem; n * n];
    for i in 0..m {
        for j in 0..2 {
            for k in 0..m {
                for l in 0..2 {
                    let ii = if j == 0 { (i + k) % m } else { (i + m - k % m) % m };
                    mul[enc(i, j) * n + enc(k, l)] = enc(ii, (j + l) % 2) as Elem;
                }
            }
        }
    }
    let gens = if m > 1 { vec![1, m as Elem] } else { vec![m as Elem] };
    Ok(GroupTable::from_mul_unchecked(n, mul, gens))
}

/// Generalized quaternion group of order `2^k >= 8`: `a` of order `n/2`,
/// `b^2 = a^(n/4)`, `b^-1 a b = a^-1`. Element `i + m*j` is `a^i b^j`.
pub fn quaternion_table(order: u64) -> Result<GroupTable> {
    assert!(order >= 8 && order.is_power_of_two(), "quaternion order must be 2^k >= 8");
    let n = order as usize;
    let m = n / 2;
    let enc = |i: usize, j: usize| i + m * j;
    let mut mul = vec![0 as Elem; n * n];
    for i in 0..m {
        for j in 0..2 {
            for k in 0..m {
                for l in 0..2 {
                    let (mut ii, jj) = if j == 0 {
                        ((i + k) % m, l)
                    } else {
                        ((i + m - k) % m, (1 + l) % 2)
                    };
                    if j == 1 && l == 1 {
                        ii = (ii + m / 2) % m;
                    }
                    mul[enc(i, j) * n + enc(k, l)] = enc(ii, jj) as Elem;
                }
            }
        }
    }
    Ok(GroupTable::from_mul_unchecked(n, mul, vec![1, m as Elem]))
}

/// Symmetric group on `n` points, generated by a transposition and an
/// `n`-cycle, tabulated by breadth-first closure.
pub fn symmetric_table(n: u32, cap: usize) -> Result<GroupTable> {
    let n = n as usize;
    if n <= 1 {
        return close_permutations(n.max(1), &[], cap);
    }
    let mut transposition: Vec<usize> = (0..n).collect();
    transposition.swap(0, 1);
    if n == 2 {
        return close_permutations(2, &[transposition], cap);
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    close_permutations(n, &[transposition, cycle], cap)
}

/// Alternating group on `n` points, generated by consecutive 3-cycles.
pub fn alternating_table(n: u32, cap: usize) -> Result<GroupTable> {
    let n = n as usize;
    if n <= 2 {
        return close_permutations(n.max(1), &[], cap);
    }
    let mut gens = Vec::new();
    for i in 0..=(n - 3) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm[i] = i + 1;
        perm[i + 1] = i + 2;
        perm[i + 2] = i;
        gens.push(perm);
    }
    close_permutations(n, &gens, cap)
}

/// Heisenberg group over the prime field: triples `(a, b, c)` encoded as
/// `a*p^2 + b*p + c` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')`.
/// Its center is generated by `(0,0,1)`, index 1.
pub fn heisenberg_table(p: u64) -> Result<GroupTable> {
    let p = p as usize;
    let n = p * p * p;
    if n > Elem::MAX as usize {
        return Err(Error::OrderCapExceeded { cap: Elem::MAX as usize });
    }
    let enc = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut mul = vec![0 as Elem; n * n];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let row = enc(a, b, c);
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            let v = enc((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                            mul[row * n + enc(a2, b2, c2)] = v as Elem;
                        }
                    }
                }
            }
        }
    }
    let gens = vec![enc(1, 0, 0) as Elem, enc(0, 1, 0) as Elem];
    Ok(GroupTable::from_mul_unchecked(n, mul, gens))
}

/// The non-Heisenberg extraspecial group of order `p^3` for odd `p`:
/// `<a, b : a^(p^2) = 1, b^p = 1, b^-1 a b = a^(1+p)>`, exponent `p^2`.
/// Element `i*p + j` is `a^i b^j`; the center is generated by `a^p`.
fn exponent_p_squared_table(p: u64) -> Result<GroupTable> {
    let p = p as usize;
    let p2 = p * p;
    let n = p2 * p;
    if n > Elem::MAX as usize {
        return Err(Error::OrderCapExceeded { cap: Elem::MAX as usize });
    }
    let enc = |i: usize, j: usize| i * p + j;
    let mut pw = vec![1usize; p];
    for j in 1..p {
        pw[j] = pw[j - 1] * (1 + p) % p2;
    }
    let mut mul = vec![0 as Elem; n * n];
    for i in 0..p2 {
        for j in 0..p {
            let row = enc(i, j);
            for k in 0..p2 {
                for l in 0..p {
                    let v = enc((i + k * pw[j]) % p2, (j + l) % p);
                    mul[row * n + enc(k, l)] = v as Elem;
                }
            }
        }
    }
    let gens = vec![enc(1, 0) as Elem, enc(0, 1) as Elem];
    Ok(GroupTable::from_mul_unchecked(n, mul, gens))
}

/// Central product `(A x B) / <(z_a, z_b^-1)>` for central elements of equal
/// order, built directly on minimal coset representatives of the virtual
/// pair space (the full product table is never materialized). Returns the
/// quotient table and the image of the identified central generator.
pub fn central_product(
    a: &GroupTable,
    z_a: Elem,
    b: &GroupTable,
    z_b: Elem,
    cap: usize,
) -> Result<(GroupTable, Elem)> {
    let p = a.element_order(z_a);
    assert_eq!(p, b.element_order(z_b), "identified central elements must have equal order");
    let (na, nb) = (a.order(), b.order());
    let pairs = na * nb;
    let result_order = pairs / p;
    if result_order > cap || result_order > Elem::MAX as usize {
        return Err(Error::OrderCapExceeded { cap });
    }
    let enc = |x: usize, y: usize| x * nb + y;
    let zb_inv = b.inv(z_b);
    // minimal representative of each <(z_a, z_b^-1)> coset
    let mut rep = vec![u32::MAX; pairs];
    for x in 0..na {
        for y in 0..nb {
            let mut best = u32::MAX;
            let (mut xa, mut yb) = (x as Elem, y as Elem);
            for _ in 0..p {
                let e = enc(xa as usize, yb as usize) as u32;
                if e < best {
                    best = e;
                }
                xa = a.mul(xa, z_a);
                yb = b.mul(yb, zb_inv);
            }
            rep[enc(x, y)] = best;
        }
    }
    let mut reps: Vec<u32> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    debug_assert_eq!(reps.len(), result_order);
    let mut rank = vec![Elem::MAX; pairs];
    for (i, &r) in reps.iter().enumerate() {
        rank[r as usize] = i as Elem;
    }
    let q = result_order;
    let mut mul = vec![0 as Elem; q * q];
    for i in 0..q {
        let (x, y) = ((reps[i] as usize) / nb, (reps[i] as usize) % nb);
        for j in 0..q {
            let (u, v) = ((reps[j] as usize) / nb, (reps[j] as usize) % nb);
            let prod = enc(a.mul(x as Elem, u as Elem) as usize, b.mul(y as Elem, v as Elem) as usize);
            mul[i * q + j] = rank[rep[prod] as usize];
        }
    }
    let mut gens: Vec<Elem> = Vec::new();
    for &g in a.generators() {
        gens.push(rank[rep[enc(g as usize, 0)] as usize]);
    }
    for &h in b.generators() {
        gens.push(rank[rep[enc(0, h as usize)] as usize]);
    }
    gens.dedup();
    let z_new = rank[rep[enc(z_a as usize, 0)] as usize];
    Ok((GroupTable::from_mul_unchecked(q, mul, gens), z_new))
}

/// Extraspecial group of order `p^(1+2m)`, built as the iterated central
/// product of `m` order-`p^3` factors with identified centers. The first
/// factor carries the type: for odd `p`, `Minus` starts from the exponent
/// `p^2` group; for `p = 2`, `Plus` starts from (and continues with) the
/// dihedral group of order 8 and `Minus` starts from the quaternion group.
pub fn extraspecial_table(p: u64, m: u32, sign: Sign, cap: usize) -> Result<GroupTable> {
    assert!(is_prime(p), "extraspecial parameter must be prime");
    assert!(m >= 1);
    let (mut acc, mut z) = base_extraspecial_factor(p, sign)?;
    for _ in 1..m {
        let (factor, zf) = base_extraspecial_factor(p, Sign::Plus)?;
        let (next, z_next) = central_product(&acc, z, &factor, zf, cap)?;
        acc = next;
        z = z_next;
    }
    if acc.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    Ok(acc)
}

fn base_extraspecial_factor(p: u64, sign: Sign) -> Result<(GroupTable, Elem)> {
    match (p, sign) {
        (2, Sign::Plus) => Ok((dihedral_table(8)?, 2)),
        (2, Sign::Minus) => Ok((quaternion_table(8)?, 2)),
        (_, Sign::Plus) => {
            let t = heisenberg_table(p)?;
            Ok((t, 1))
        }
        (_, Sign::Minus) => {
            let t = exponent_p_squared_table(p)?;
            // center is generated by a^p, at index p*p in the i*p+j encoding
            Ok((t, (p * p) as Elem))
        }
    }
}

/// The fixed list of direct-product descriptors included in the catalog.
const PRODUCT_SUITE: &[&str] = &[
    "C2 x C2",
    "C2 x C4",
    "C4 x C4",
    "C2 x D8",
    "C2 x Q8",
    "C2 x S3",
    "C3 x S3",
    "C2 x ES(3,1,+)",
];

/// Deterministic list of all built-in family instances of order at most
/// `max_order`: cyclic groups up to C16, dihedral groups from order 8 up,
/// generalized quaternion groups, S3..S5, A4..A5, both extraspecial types
/// for p in {2, 3, 5}, and a fixed list of direct products.
pub fn catalog_suite(max_order: u64) -> Vec<GroupDescriptor> {
    let mut out = Vec::new();
    for n in 1..=16 {
        if n <= max_order {
            out.push(GroupDescriptor::Cyclic(n));
        }
    }
    let mut n = 8;
    while n <= max_order {
        out.push(GroupDescriptor::Dihedral(n));
        n += 2;
    }
    let mut n = 8;
    while n <= max_order {
        out.push(GroupDescriptor::Quaternion(n));
        n *= 2;
    }
    for n in 3..=5u32 {
        let d = GroupDescriptor::Symmetric(n);
        if d.order().unwrap() <= max_order {
            out.push(d);
        }
    }
    for n in 4..=5u32 {
        let d = GroupDescriptor::Alternating(n);
        if d.order().unwrap() <= max_order {
            out.push(d);
        }
    }
    for p in [2u64, 3, 5] {
        for m in 1.. {
            let d = GroupDescriptor::Extraspecial { p, m, sign: Sign::Plus };
            match d.order() {
                Some(order) if order <= max_order => {
                    out.push(d);
                    out.push(GroupDescriptor::Extraspecial { p, m, sign: Sign::Minus });
                }
                _ => break,
            }
        }
    }
    for text in PRODUCT_SUITE {
        let d = parse_descriptor(text).expect("product suite entries parse");
        if d.order().unwrap() <= max_order {
            out.push(d);
        }
    }
    out
}
