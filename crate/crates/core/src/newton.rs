//! Newton diagrams of plane-curve germs: lower convex hull, the Newton
//! distance function, the Kouchnirenko number, and the nondegeneracy test.
//!
//! A compact face with primitive inward normal `(p, q)` on the line
//! `p*x + q*y = c` contributes the linear form `(p*x + q*y)/c`; the Newton
//! distance of a positive lattice point is the minimum of these forms. Faces
//! are tested for degeneracy through the one-variable edge polynomial: the
//! support of a face lies on a segment, so the face polynomial is
//! `x^a y^b * P(u)` for a single Laurent monomial `u`, and a critical point
//! with both coordinates nonzero exists iff `P` has a multiple nonzero root
//! (decided by a univariate gcd).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::MultiPoly;
use crate::rat::{rat, Rat};

/// A compact face on the line `p*x + q*y = c` with `p, q > 0` primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub p: i64,
    pub q: i64,
    pub c: i64,
    /// Endpoints, x-increasing.
    pub from: (i64, i64),
    pub to: (i64, i64),
}

impl Face {
    /// The normalized linear form `(p*x + q*y)/c`.
    pub fn form(&self, x: i64, y: i64) -> Rat {
        rat(self.p * x + self.q * y) / rat(self.c)
    }
}

#[derive(Clone, Debug)]
pub struct NewtonDiagram {
    /// Hull vertices, decreasing first coordinate.
    pub vertices: Vec<(i64, i64)>,
    pub faces: Vec<Face>,
    /// Meets both coordinate axes.
    pub convenient: bool,
}

/// Lower-left convex hull of the support (as the boundary of the union of
/// shifted positive quadrants). Points strictly above the hull are dropped.
pub fn newton_diagram(support: &[Monomial]) -> Result<NewtonDiagram> {
    if support.is_empty() {
        return Err(Error::InvalidConfig("empty support".into()));
    }
    let pts: Vec<(i64, i64)> = support
        .iter()
        .map(|m| {
            assert_eq!(m.nvars(), 2, "newton_diagram expects plane support");
            (m.0[0] as i64, m.0[1] as i64)
        })
        .collect();
    if pts.iter().any(|&(x, y)| x == 0 && y == 0) {
        return Err(Error::InvalidConfig("support contains the origin".into()));
    }

    // Pareto-minimal points
    let mut minimal: Vec<(i64, i64)> = pts
        .iter()
        .copied()
        .filter(|&(x, y)| {
            !pts.iter()
                .any(|&(a, b)| (a, b) != (x, y) && a <= x && b <= y)
        })
        .collect();
    minimal.sort();
    minimal.dedup();
    minimal.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));

    // monotone chain, x ascending / y descending; slopes must increase
    let mut chain: Vec<(i64, i64)> = Vec::new();
    for pt in minimal {
        while chain.len() >= 2 {
            let a = chain[chain.len() - 2];
            let b = chain[chain.len() - 1];
            let cross = (b.0 - a.0) * (pt.1 - b.1) - (b.1 - a.1) * (pt.0 - b.0);
            if cross <= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(pt);
    }

    let mut faces = Vec::new();
    for w in chain.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let (dx, dy) = (x2 - x1, y2 - y1);
        debug_assert!(dx > 0 && dy < 0);
        let g = gcd_i64(dx, -dy);
        let p = -dy / g;
        let q = dx / g;
        faces.push(Face {
            p,
            q,
            c: p * x1 + q * y1,
            from: (x1, y1),
            to: (x2, y2),
        });
    }

    let convenient =
        chain.first().is_some_and(|&(x, _)| x == 0) && chain.last().is_some_and(|&(_, y)| y == 0);

    let mut vertices = chain;
    vertices.reverse(); // decreasing first coordinate
    Ok(NewtonDiagram {
        vertices,
        faces,
        convenient,
    })
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Newton distance `l(p) = min over faces of (p*x + q*y)/c`.
pub fn newton_distance(point: (i64, i64), nd: &NewtonDiagram) -> Result<Rat> {
    assert!(
        point.0 > 0 && point.1 > 0,
        "distance needs a positive point"
    );
    nd.faces
        .iter()
        .map(|f| f.form(point.0, point.1))
        .min()
        .ok_or(Error::NotConvenient)
}

/// Kouchnirenko's number for a convenient plane diagram:
/// `2*Area - a - b + 1` with intercepts `a`, `b`.
pub fn kouchnirenko_mu(nd: &NewtonDiagram) -> Result<i64> {
    if !nd.convenient {
        return Err(Error::NotConvenient);
    }
    // polygon (0,0), (a,0), ..., (0,b) walking the vertices x-decreasing
    let a = nd.vertices.first().unwrap().0;
    let b = nd.vertices.last().unwrap().1;
    debug_assert_eq!(nd.vertices.first().unwrap().1, 0);
    debug_assert_eq!(nd.vertices.last().unwrap().0, 0);
    let mut poly = vec![(0i64, 0i64)];
    poly.extend(nd.vertices.iter().copied());
    let mut twice_area = 0i64;
    for i in 0..poly.len() {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % poly.len()];
        twice_area += x1 * y2 - x2 * y1;
    }
    Ok(twice_area.abs() - a - b + 1)
}

/// Face polynomial of `f` along `face`: the sub-polynomial supported on the
/// face segment.
pub fn face_polynomial(f: &MultiPoly, face: &Face) -> MultiPoly {
    MultiPoly::from_terms(
        2,
        f.terms_desc()
            .filter(|(m, _)| {
                let (x, y) = (m.0[0] as i64, m.0[1] as i64);
                face.p * x + face.q * y == face.c && x >= face.from.0 && x <= face.to.0
            })
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect(),
    )
}

/// Is a (quasi-homogeneous) face polynomial degenerate, i.e. does it have a
/// critical point with both coordinates nonzero?
///
/// The support lies on a segment, so `f = x^a y^b P(u)` with `u` the
/// primitive step monomial; a torus critical point exists iff `P` has a
/// multiple nonzero root. A face polynomial that is a single monomial in
/// both variables defines a multiple axis pair and is treated as degenerate.
pub fn face_poly_degenerate(face_poly: &MultiPoly) -> bool {
    let support = face_poly.support();
    if support.is_empty() {
        return true;
    }
    if support.len() == 1 {
        let m = &support[0];
        return m.0[0] >= 1 && m.0[1] >= 1;
    }
    // direction along the segment
    let mut pts: Vec<(i64, i64)> = support
        .iter()
        .map(|m| (m.0[0] as i64, m.0[1] as i64))
        .collect();
    pts.sort();
    let (x0, y0) = pts[0];
    let (dx, dy) = (pts[1].0 - x0, pts[1].1 - y0);
    let g0 = gcd_i64(dx, dy);
    let (sx, sy) = (dx / g0, dy / g0);
    let mut coeffs: Vec<Rat> = Vec::new();
    for m in &support {
        let (x, y) = (m.0[0] as i64, m.0[1] as i64);
        let jx = x - x0;
        // all support points must lie on the lattice segment
        if sx != 0 && jx % sx != 0 {
            return true;
        }
        let j = if sx != 0 { jx / sx } else { (y - y0) / sy };
        if x0 + j * sx != x || y0 + j * sy != y || j < 0 {
            return true;
        }
        let j = j as usize;
        if coeffs.len() <= j {
            coeffs.resize(j + 1, Rat::zero());
        }
        coeffs[j] = face_poly.coeff(m);
    }
    has_multiple_nonzero_root(&coeffs)
}

/// Does `P` (coefficients low-to-high) have a multiple root away from zero?
fn has_multiple_nonzero_root(coeffs: &[Rat]) -> bool {
    let first = coeffs.iter().position(|c| !c.is_zero());
    let Some(first) = first else {
        return false;
    };
    let p: Vec<Rat> = coeffs[first..].to_vec();
    if p.len() <= 1 {
        return false;
    }
    let dp: Vec<Rat> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat(i as i64))
        .collect();
    let g = poly_gcd(&p, &dp);
    // multiple nonzero root iff the gcd has a root besides zero
    let low = g.iter().position(|c| !c.is_zero()).unwrap_or(0);
    g.len().saturating_sub(1) > low
}

/// Monic univariate gcd over Q (coefficients low-to-high, no trailing zeros).
fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let trim = |v: &[Rat]| -> Vec<Rat> {
        let mut v = v.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut a = trim(a);
    let mut b = trim(b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = trim(&r);
    }
    if let Some(lead) = a.last().cloned() {
        if !lead.is_one() {
            for c in &mut a {
                *c /= &lead;
            }
        }
    }
    a
}

fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr].clone() / lead;
        if !factor.is_zero() {
            for i in 0..=db {
                let idx = dr - db + i;
                let v = r[idx].clone() - &factor * &b[i];
                r[idx] = v;
            }
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Newton-nondegeneracy of a plane germ: every compact face polynomial is
/// free of critical points with both coordinates nonzero.
pub fn nondegeneracy_check(f: &MultiPoly, nd: &NewtonDiagram) -> bool {
    if f.nvars() != 2 {
        return false;
    }
    nd.faces
        .iter()
        .all(|face| !face_poly_degenerate(&face_polynomial(f, face)))
}
