//! Finite acyclic quivers, dimension vectors and the Euler form.
//!
//! Arrows are kept as an explicit multiset of (source, target) pairs so the
//! Euler form is literally `sum_i a_i b_i - sum_arrows a_src b_tgt`.

use crate::arith;
use crate::error::{Error, Result};
use crate::geometry::{Surface, SurfaceKind};

/// A finite quiver without oriented cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Quiver> {
        for &(s, t) in &arrows {
            if s >= vertex_count || t >= vertex_count {
                return Err(Error::input(format!(
                    "arrow {s}>{t} outside the {vertex_count} vertices"
                )));
            }
        }
        let q = Quiver { vertex_count, arrows };
        if q.has_cycle() {
            return Err(Error::input("quiver contains an oriented cycle".to_string()));
        }
        Ok(q)
    }

    /// Two vertices, three parallel arrows.
    pub fn kronecker3() -> Quiver {
        Quiver { vertex_count: 2, arrows: vec![(0, 1); 3] }
    }

    /// Three vertices with two parallel arrows to each of the outer two.
    pub fn double_two_arrow() -> Quiver {
        Quiver { vertex_count: 3, arrows: vec![(0, 1), (0, 1), (0, 2), (0, 2)] }
    }

    pub fn by_shape(name: &str) -> Result<Quiver> {
        match name {
            "kronecker3" => Ok(Quiver::kronecker3()),
            "beilinsonQ" => Ok(Quiver::double_two_arrow()),
            other => Err(Error::input(format!(
                "unknown quiver shape {other:?} (want kronecker3 or beilinsonQ)"
            ))),
        }
    }

    /// Parse the inline form `0>1,0>1,0>1`.
    pub fn parse_arrows(text: &str) -> Result<Quiver> {
        let mut arrows = Vec::new();
        let mut max_vertex = 0usize;
        for part in text.split(',') {
            let part = part.trim();
            let (s, t) = part
                .split_once('>')
                .ok_or_else(|| Error::input(format!("arrow {part:?} should look like 0>1")))?;
            let s: usize = s
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad vertex {s:?}")))?;
            let t: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad vertex {t:?}")))?;
            max_vertex = max_vertex.max(s).max(t);
            arrows.push((s, t));
        }
        if arrows.is_empty() {
            return Err(Error::input("no arrows given".to_string()));
        }
        Quiver::new(max_vertex + 1, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn has_cycle(&self) -> bool {
        // Kahn peeling: if some vertices never reach in-degree zero there is
        // an oriented cycle (self-loops included).
        let mut indeg = vec![0usize; self.vertex_count];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut queue: Vec<usize> = (0..self.vertex_count).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        seen != self.vertex_count
    }
}

/// Non-negative integers attached to the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn new(dims: Vec<i64>) -> Result<DimVector> {
        if dims.iter().any(|&d| d < 0) {
            return Err(Error::input("dimension vector entries must be non-negative".to_string()));
        }
        Ok(DimVector(dims))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn scale(&self, m: i64) -> DimVector {
        DimVector(self.0.iter().map(|&d| d * m).collect())
    }
}

impl std::fmt::Display for DimVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `<a, b> = sum_i a_i b_i - sum_{arrows} a_source b_target`.
pub fn euler_form(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i128> {
    if a.0.len() != q.vertex_count || b.0.len() != q.vertex_count {
        return Err(Error::input(format!(
            "dimension vectors of lengths {} and {} on {} vertices",
            a.0.len(),
            b.0.len(),
            q.vertex_count
        )));
    }
    let mut acc: i128 = 0;
    for i in 0..q.vertex_count {
        acc = arith::add(acc, arith::mul(a.0[i] as i128, b.0[i] as i128)?)?;
    }
    for &(s, t) in &q.arrows {
        acc = arith::sub(acc, arith::mul(a.0[s] as i128, b.0[t] as i128)?)?;
    }
    Ok(acc)
}

/// Candidate root type of a dimension vector, from the Tits form sign and
/// support connectivity alone. Schur-root certification is out of scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootType {
    RealCandidate,
    ImaginaryCandidate,
    Indefinite,
}

impl std::fmt::Display for RootType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RootType::RealCandidate => "real_candidate",
            RootType::ImaginaryCandidate => "imaginary_candidate",
            RootType::Indefinite => "indefinite",
        };
        f.write_str(s)
    }
}

pub fn root_type(q: &Quiver, d: &DimVector) -> Result<RootType> {
    if d.is_zero() {
        return Err(Error::input("zero dimension vector".to_string()));
    }
    let form = euler_form(q, d, d)?;
    if form <= 0 && support_connected(q, d) {
        return Ok(RootType::ImaginaryCandidate);
    }
    if form == 1 {
        return Ok(RootType::RealCandidate);
    }
    Ok(RootType::Indefinite)
}

fn support_connected(q: &Quiver, d: &DimVector) -> bool {
    let support: Vec<usize> = (0..q.vertex_count).filter(|&v| d.0[v] != 0).collect();
    let Some(&start) = support.first() else {
        return false;
    };
    let in_support = |v: usize| d.0[v] != 0;
    let mut seen = vec![false; q.vertex_count];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &(s, t) in &q.arrows {
            for (x, y) in [(s, t), (t, s)] {
                if x == v && in_support(y) && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    support.iter().all(|&v| seen[v])
}

/// `1 - m^2 <d, d>`: dimension of the moduli space at the representations
/// built from `m` copies of `d`.
pub fn moduli_dim(q: &Quiver, d: &DimVector, m: i64) -> Result<i128> {
    if m < 1 {
        return Err(Error::input(format!("multiplicity m = {m} must be at least 1")));
    }
    let form = euler_form(q, d, d)?;
    Ok(1 - (m as i128) * (m as i128) * form)
}

/// The quiver shape and dimension vector carrying the constructed l-away
/// bundles: `(l, l+2)` on the 3-Kronecker quiver for P2,
/// `(2l, l+1, l+1)` on the three-vertex shape for the quadric.
pub fn beilinson_dimvec(surface: &Surface, l: i64) -> Result<(Quiver, DimVector)> {
    match surface.kind {
        SurfaceKind::P2 => {
            if l <= 1 {
                return Err(Error::input(format!("the P2 family needs l > 1, got {l}")));
            }
            Ok((Quiver::kronecker3(), DimVector(vec![l, l + 2])))
        }
        SurfaceKind::P1xP1 => {
            if l < 1 {
                return Err(Error::input(format!("the quadric family needs l >= 1, got {l}")));
            }
            Ok((Quiver::double_two_arrow(), DimVector(vec![2 * l, l + 1, l + 1])))
        }
        other => Err(Error::feature(format!("no quiver family on {other}"))),
    }
}
