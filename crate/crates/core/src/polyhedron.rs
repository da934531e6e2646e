//! Combinatorial models of the triangulated Platonic solids.
//!
//! Each solid is stored as a consistently oriented face list over numbered
//! vertices. The rotation group is derived, not tabulated: a rotation is
//! exactly a vertex permutation that preserves the oriented faces, and it is
//! determined by the image of one directed edge.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Polyhedron {
    pub name: &'static str,
    pub vertex_count: usize,
    /// Oriented triangles; every directed edge occurs in exactly one face.
    pub faces: Vec<[usize; 3]>,
}

pub fn tetrahedron() -> Polyhedron {
    Polyhedron {
        name: "tetrahedron",
        vertex_count: 4,
        faces: vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]],
    }
}

pub fn octahedron() -> Polyhedron {
    // vertices: +x, -x, +y, -y, +z, -z; one face per sign octant
    let mut faces = Vec::new();
    for s1 in 0..2 {
        for s2 in 0..2 {
            for s3 in 0..2 {
                let (vx, vy, vz) = (s1, 2 + s2, 4 + s3);
                if (s1 + s2 + s3) % 2 == 0 {
                    faces.push([vx, vy, vz]);
                } else {
                    faces.push([vx, vz, vy]);
                }
            }
        }
    }
    Polyhedron { name: "octahedron", vertex_count: 6, faces }
}

pub fn icosahedron() -> Polyhedron {
    // 0 = north pole, 1..=5 upper ring, 6..=10 lower ring, 11 = south pole
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push([0, u(i), u(i + 1)]);
        faces.push([11, l(i + 1), l(i)]);
        faces.push([u(i), l(i), u(i + 1)]);
        faces.push([u(i), l(i + 4), l(i)]);
    }
    Polyhedron { name: "icosahedron", vertex_count: 12, faces }
}

impl Polyhedron {
    /// Undirected edges, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for f in &self.faces {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                out.push((a.min(b), a.max(b)));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Face vertex sets, each sorted, the list sorted.
    pub fn face_cells(&self) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = self
            .faces
            .iter()
            .map(|f| {
                let mut c = *f;
                c.sort();
                c
            })
            .collect();
        out.sort();
        out
    }

    /// `next[(a,b)] = c` whenever `(a,b,c)` is an oriented face; walking
    /// `b ↦ next[(a,b)]` circles the link of `a`.
    fn next_map(&self) -> Result<HashMap<(usize, usize), usize>> {
        let mut next = HashMap::new();
        for f in &self.faces {
            for k in 0..3 {
                let (a, b, c) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
                if next.insert((a, b), c).is_some() {
                    return Err(Error::Construction(format!(
                        "{}: directed edge ({a},{b}) lies in two faces",
                        self.name
                    )));
                }
            }
        }
        for &(a, b) in next.keys() {
            if !next.contains_key(&(b, a)) {
                return Err(Error::Construction(format!(
                    "{}: directed edge ({b},{a}) missing, orientation inconsistent",
                    self.name
                )));
            }
        }
        Ok(next)
    }

    /// All vertex permutations preserving the oriented faces.
    ///
    /// There is exactly one per directed edge; the result is sorted and starts
    /// with the identity.
    pub fn rotations(&self) -> Result<Vec<Vec<usize>>> {
        let next = self.next_map()?;
        let n = self.vertex_count;
        let base_a = 0usize;
        let base_b = (0..n)
            .find(|&b| next.contains_key(&(base_a, b)))
            .ok_or_else(|| Error::Construction(format!("{}: vertex 0 isolated", self.name)))?;

        let mut rotations = Vec::new();
        for &(ta, tb) in next.keys() {
            let img = self.propagate(&next, (base_a, base_b), (ta, tb))?;
            // full oriented-face check, not just consistency of the walk
            let ok = next.iter().all(|(&(a, b), &c)| next.get(&(img[a], img[b])) == Some(&img[c]));
            if !ok {
                return Err(Error::Construction(format!(
                    "{}: directed edge ({ta},{tb}) does not extend to a rotation",
                    self.name
                )));
            }
            rotations.push(img);
        }
        rotations.sort();
        rotations.dedup();
        let expected = next.len();
        if rotations.len() != expected {
            return Err(Error::Construction(format!(
                "{}: found {} rotations, expected {expected}",
                self.name,
                rotations.len()
            )));
        }
        Ok(rotations)
    }

    fn propagate(
        &self,
        next: &HashMap<(usize, usize), usize>,
        from: (usize, usize),
        to: (usize, usize),
    ) -> Result<Vec<usize>> {
        let n = self.vertex_count;
        let mut img = vec![usize::MAX; n];
        img[from.0] = to.0;
        img[from.1] = to.1;
        let mut queue = vec![from];
        let mut done = vec![false; n];
        while let Some((a, b)) = queue.pop() {
            if done[a] {
                continue;
            }
            done[a] = true;
            let (mut x, mut y) = (b, img[b]);
            loop {
                let nx = next[&(a, x)];
                let ny = next[&(img[a], y)];
                if img[nx] == usize::MAX {
                    img[nx] = ny;
                } else if img[nx] != ny {
                    return Err(Error::Construction(format!(
                        "{}: inconsistent propagation at vertex {nx}",
                        self.name
                    )));
                }
                queue.push((nx, a));
                (x, y) = (nx, ny);
                if x == b {
                    break;
                }
            }
        }
        if img.contains(&usize::MAX) {
            return Err(Error::Construction(format!("{}: vertex graph disconnected", self.name)));
        }
        Ok(img)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(p: &Polyhedron) -> (usize, usize, usize) {
        (p.vertex_count, p.edges().len(), p.faces.len())
    }

    #[test]
    fn euler_counts() {
        assert_eq!(counts(&tetrahedron()), (4, 6, 4));
        assert_eq!(counts(&octahedron()), (6, 12, 8));
        assert_eq!(counts(&icosahedron()), (12, 30, 20));
    }

    #[test]
    fn orientations_consistent() {
        for p in [tetrahedron(), octahedron(), icosahedron()] {
            assert!(p.next_map().is_ok(), "{} inconsistent", p.name);
        }
    }

    #[test]
    fn rotation_counts() {
        assert_eq!(tetrahedron().rotations().unwrap().len(), 12);
        assert_eq!(octahedron().rotations().unwrap().len(), 24);
        assert_eq!(icosahedron().rotations().unwrap().len(), 60);
    }

    #[test]
    fn rotations_preserve_edges() {
        let p = icosahedron();
        let edges = p.edges();
        for r in p.rotations().unwrap() {
            for &(a, b) in &edges {
                let (x, y) = (r[a].min(r[b]), r[a].max(r[b]));
                assert!(edges.binary_search(&(x, y)).is_ok());
            }
        }
    }
}
