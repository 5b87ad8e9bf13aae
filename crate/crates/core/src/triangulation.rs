//! Ideal triangulations given by face gluings, with derived edge, face and
//! vertex classes.
//!
//! Tetrahedron edges are numbered by vertex pair `01, 02, 03, 12, 13, 23`,
//! so edge `i` is opposite edge `5 - i`. In [`SixColors`] slots these are
//! `a, b, f, e, c, d`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blocks::{AdmissibleTriple, SixColors};
use crate::error::{Error, Result};

/// Vertex pairs of the six tetrahedron edges.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the edge joining vertices `u != v`.
pub fn edge_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    match (u, v) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge between {u} and {v}"),
    }
}

/// The three edges of face `f` (the face opposite vertex `f`), ordered by
/// the vertex pairs of the remaining vertices in increasing order.
pub fn face_edges(f: usize) -> [usize; 3] {
    let vs: Vec<usize> = (0..4).filter(|&v| v != f).collect();
    [
        edge_index(vs[0], vs[1]),
        edge_index(vs[0], vs[2]),
        edge_index(vs[1], vs[2]),
    ]
}

/// A permutation of `{0, 1, 2, 3}`, stored as its image list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 4]", into = "[u8; 4]")]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(&self) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm4(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4(other.0.map(|x| self.0[x as usize]))
    }

    pub fn is_odd(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Some(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

impl TryFrom<[u8; 4]> for Perm4 {
    type Error = String;

    fn try_from(v: [u8; 4]) -> std::result::Result<Self, String> {
        Perm4::new(v).ok_or_else(|| format!("{v:?} is not a permutation of 0..3"))
    }
}

impl From<Perm4> for [u8; 4] {
    fn from(p: Perm4) -> [u8; 4] {
        p.0
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// One face identification: face `face` of `tet` is glued to face `face2`
/// of `tet2`, with vertex `v` of `tet` going to `perm[v]` of `tet2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing(pub usize, pub usize, pub usize, pub usize, pub Perm4);

/// The on-disk form: `{"tets": t, "gluings": [[tet, face, tet', face', perm], ...]}`.
/// Each identification may be listed from either side or from both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationDoc {
    pub tets: usize,
    pub gluings: Vec<Gluing>,
}

/// A validated, oriented ideal triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    /// `glue[j][f] = (tet, face, perm)`.
    glue: Vec<[(usize, usize, Perm4); 4]>,
    edge_of: Vec<[usize; 6]>,
    edge_classes: Vec<EdgeClass>,
    face_classes: Vec<FaceClass>,
    vertex_classes: Vec<VertexClass>,
}

/// An edge of the triangulation: the tetrahedron edges identified with it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    pub id: usize,
    /// `(tet, edge 0..5)` pairs, sorted.
    pub incidences: Vec<(usize, usize)>,
    /// True if the gluings identify the edge with itself reversed.
    pub reversed: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.incidences.len()
    }
}

/// A triangle of the triangulation, with one representative `(tet, face)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceClass {
    pub id: usize,
    pub tet: usize,
    pub face: usize,
    /// Edge classes of the three sides, repeated if a class occurs twice.
    pub edges: [usize; 3],
}

/// An ideal vertex (cusp) of the triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub id: usize,
    /// `(tet, vertex)` corners, sorted.
    pub corners: Vec<(usize, usize)>,
    /// Euler characteristic of the vertex link.
    pub link_euler: i64,
}

/// Edge-class ids of every tetrahedron edge, in edge order `01 .. 23`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TetEdgeLabels(pub Vec<[usize; 6]>);

impl TetEdgeLabels {
    /// The colors of tetrahedron `j` under a coloring of edge classes.
    pub fn six_colors(&self, j: usize, colors: &[u64]) -> SixColors {
        let l = self.0[j].map(|k| colors[k]);
        SixColors {
            a: l[0],
            b: l[1],
            f: l[2],
            e: l[3],
            c: l[4],
            d: l[5],
        }
    }

    /// The three opposite pairs `(01, 23), (02, 13), (03, 12)` of tetrahedron `j`.
    pub fn opposite_pairs(&self, j: usize) -> [(usize, usize); 3] {
        let l = self.0[j];
        [(l[0], l[5]), (l[1], l[4]), (l[2], l[3])]
    }
}

/// Structured description of an invalid gluing table.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GluingError {
    #[error("tetrahedron {tet} face {face}: index out of range")]
    OutOfRange { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} is glued to itself")]
    SelfGluing { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} is left unglued")]
    Dangling { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} is glued twice inconsistently")]
    NotInvolutive { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face}: permutation {perm} does not send face {face} to face {face2}")]
    InconsistentPerm {
        tet: usize,
        face: usize,
        face2: usize,
        perm: Perm4,
    },
    #[error("tetrahedron {tet} face {face}: permutation {perm} is even, gluing reverses orientation")]
    NotOriented { tet: usize, face: usize, perm: Perm4 },
    #[error("triangulation has no tetrahedra")]
    Empty,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    /// Dense class ids numbered by first appearance.
    #[allow(clippy::needless_range_loop)]
    fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[x] = id[r];
        }
        (out, next)
    }
}

impl Triangulation {
    pub fn from_doc(doc: &TriangulationDoc) -> std::result::Result<Self, GluingError> {
        let t = doc.tets;
        if t == 0 {
            return Err(GluingError::Empty);
        }
        let mut glue: Vec<[Option<(usize, usize, Perm4)>; 4]> = vec![[None; 4]; t];
        let mut set = |tet: usize, face: usize, val: (usize, usize, Perm4)| match glue[tet][face] {
            Some(old) if old != val => Err(GluingError::NotInvolutive { tet, face }),
            _ => {
                glue[tet][face] = Some(val);
                Ok(())
            }
        };
        for &Gluing(tet, face, tet2, face2, perm) in &doc.gluings {
            if tet >= t || face > 3 {
                return Err(GluingError::OutOfRange { tet, face });
            }
            if tet2 >= t || face2 > 3 {
                return Err(GluingError::OutOfRange { tet: tet2, face: face2 });
            }
            if (tet, face) == (tet2, face2) {
                return Err(GluingError::SelfGluing { tet, face });
            }
            if perm.apply(face) != face2 {
                return Err(GluingError::InconsistentPerm { tet, face, face2, perm });
            }
            if !perm.is_odd() {
                return Err(GluingError::NotOriented { tet, face, perm });
            }
            set(tet, face, (tet2, face2, perm))?;
            set(tet2, face2, (tet, face, perm.inverse()))?;
        }
        let mut full = Vec::with_capacity(t);
        for (tet, faces) in glue.iter().enumerate() {
            let mut row = [(0, 0, Perm4::IDENTITY); 4];
            for (face, g) in faces.iter().enumerate() {
                row[face] = g.ok_or(GluingError::Dangling { tet, face })?;
            }
            full.push(row);
        }
        Ok(Self::derive(full))
    }

    fn derive(glue: Vec<[(usize, usize, Perm4); 4]>) -> Self {
        let t = glue.len();

        let mut edges = UnionFind::new(6 * t);
        for (j, row) in glue.iter().enumerate() {
            for (f, &(j2, _, p)) in row.iter().enumerate() {
                for &(u, v) in &EDGE_VERTICES {
                    if u != f && v != f {
                        edges.union(6 * j + edge_index(u, v), 6 * j2 + edge_index(p.apply(u), p.apply(v)));
                    }
                }
            }
        }
        let (elabel, ne) = edges.labels();
        let edge_of: Vec<[usize; 6]> = (0..t).map(|j| std::array::from_fn(|i| elabel[6 * j + i])).collect();
        let mut edge_classes: Vec<EdgeClass> = (0..ne)
            .map(|id| EdgeClass {
                id,
                incidences: Vec::new(),
                reversed: false,
            })
            .collect();
        for (j, row) in edge_of.iter().enumerate() {
            for (i, &k) in row.iter().enumerate() {
                edge_classes[k].incidences.push((j, i));
            }
        }

        let mut face_classes = Vec::new();
        let mut seen = BTreeSet::new();
        for (j, row) in glue.iter().enumerate() {
            for (f, &(j2, f2, _)) in row.iter().enumerate() {
                if seen.contains(&(j, f)) {
                    continue;
                }
                seen.insert((j, f));
                seen.insert((j2, f2));
                face_classes.push(FaceClass {
                    id: face_classes.len(),
                    tet: j,
                    face: f,
                    edges: face_edges(f).map(|i| edge_of[j][i]),
                });
            }
        }

        // Corners (tet, vertex) and edge ends (tet, edge, endpoint) give the
        // triangles and vertices of the vertex links.
        let mut corners = UnionFind::new(4 * t);
        let mut ends = UnionFind::new(12 * t);
        let end_index = |j: usize, u: usize, v: usize| 12 * j + 2 * edge_index(u, v) + usize::from(u > v);
        for (j, row) in glue.iter().enumerate() {
            for (f, &(j2, _, p)) in row.iter().enumerate() {
                for v in (0..4).filter(|&v| v != f) {
                    corners.union(4 * j + v, 4 * j2 + p.apply(v));
                }
                for &(u, v) in &EDGE_VERTICES {
                    if u != f && v != f {
                        let (pu, pv) = (p.apply(u), p.apply(v));
                        ends.union(end_index(j, u, v), end_index(j2, pu, pv));
                        ends.union(end_index(j, v, u), end_index(j2, pv, pu));
                    }
                }
            }
        }
        let (clabel, nv) = corners.labels();
        let (endlabel, _) = ends.labels();
        for ec in &mut edge_classes {
            let (j, i) = ec.incidences[0];
            let (u, v) = EDGE_VERTICES[i];
            ec.reversed = endlabel[end_index(j, u, v)] == endlabel[end_index(j, v, u)];
        }
        let mut vertex_classes: Vec<VertexClass> = (0..nv)
            .map(|id| VertexClass {
                id,
                corners: Vec::new(),
                link_euler: 0,
            })
            .collect();
        for j in 0..t {
            for v in 0..4 {
                vertex_classes[clabel[4 * j + v]].corners.push((j, v));
            }
        }
        for vc in &mut vertex_classes {
            let mut link_vertices = BTreeSet::new();
            for &(j, v) in &vc.corners {
                for u in (0..4).filter(|&u| u != v) {
                    link_vertices.insert(endlabel[end_index(j, v, u)]);
                }
            }
            let n = vc.corners.len() as i64;
            // V - E + F with E = 3n/2 and F = n.
            vc.link_euler = link_vertices.len() as i64 - n / 2;
        }

        Triangulation {
            glue,
            edge_of,
            edge_classes,
            face_classes,
            vertex_classes,
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        let doc: TriangulationDoc = serde_json::from_str(json).map_err(|e| Error::Triangulation(e.to_string()))?;
        Ok(Self::from_doc(&doc)?)
    }

    /// Document listing each identification once, from its lower side.
    pub fn to_doc(&self) -> TriangulationDoc {
        let mut gluings = Vec::new();
        for (j, row) in self.glue.iter().enumerate() {
            for (f, &(j2, f2, p)) in row.iter().enumerate() {
                if (j, f) < (j2, f2) {
                    gluings.push(Gluing(j, f, j2, f2, p));
                }
            }
        }
        TriangulationDoc {
            tets: self.glue.len(),
            gluings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("serializable")
    }

    pub fn num_tets(&self) -> usize {
        self.glue.len()
    }

    /// `(tet, face, perm)` glued to face `f` of tetrahedron `j`.
    pub fn neighbor(&self, j: usize, f: usize) -> (usize, usize, Perm4) {
        self.glue[j][f]
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edge_classes
    }

    pub fn face_classes(&self) -> &[FaceClass] {
        &self.face_classes
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.vertex_classes
    }

    pub fn tet_edge_labels(&self) -> TetEdgeLabels {
        TetEdgeLabels(self.edge_of.clone())
    }

    /// Edge class of edge `i` of tetrahedron `j`.
    pub fn edge_class_of(&self, j: usize, i: usize) -> usize {
        self.edge_of[j][i]
    }

    /// True when every vertex link is a torus.
    pub fn has_torus_cusps(&self) -> bool {
        self.vertex_classes.iter().all(|v| v.link_euler == 0)
    }

    /// True iff every triangle's three colors form an admissible triple.
    pub fn coloring_admissible(&self, colors: &[u64]) -> bool {
        assert_eq!(colors.len(), self.edge_classes.len(), "one color per edge class");
        self.face_classes.iter().all(|fc| {
            let [x, y, z] = fc.edges.map(|k| colors[k]);
            AdmissibleTriple::is_admissible(x, y, z)
        })
    }

    /// One of the embedded fixtures, by name.
    pub fn fixture(name: &str) -> Result<Self> {
        let gluings = match name {
            "fig8-2tet" => FIG8_2TET,
            "fig8-3tet" => FIG8_3TET,
            _ => return Err(Error::UnknownFixture(name.to_string())),
        };
        Ok(Self::from_snappy_table(gluings).expect("fixtures are valid"))
    }

    /// Builds a triangulation from per-tetrahedron neighbor and permutation
    /// lists: face `f` of tetrahedron `j` meets tetrahedron `nbrs[f]` via `perms[f]`.
    pub fn from_snappy_table(table: &[([usize; 4], [[u8; 4]; 4])]) -> std::result::Result<Self, GluingError> {
        let mut gluings = Vec::new();
        for (j, (nbrs, perms)) in table.iter().enumerate() {
            for f in 0..4 {
                let p = Perm4::new(perms[f]).ok_or(GluingError::OutOfRange { tet: j, face: f })?;
                gluings.push(Gluing(j, f, nbrs[f], p.apply(f), p));
            }
        }
        Self::from_doc(&TriangulationDoc {
            tets: table.len(),
            gluings,
        })
    }
}

/// Names of the embedded fixtures.
pub const FIXTURES: [&str; 2] = ["fig8-2tet", "fig8-3tet"];

// Figure-eight knot complement, isometry signature cPcbbbiht (two
// tetrahedra). Gluing table exported from SnapPy 3.3.2 and checked with
// Regina 7.3; regenerate from the signature before relying on it elsewhere.
const FIG8_2TET: &[([usize; 4], [[u8; 4]; 4])] = &[
    ([1, 1, 1, 1], [[0, 1, 3, 2], [1, 3, 0, 2], [1, 0, 2, 3], [2, 0, 3, 1]]),
    ([0, 0, 0, 0], [[0, 1, 3, 2], [1, 3, 0, 2], [1, 0, 2, 3], [2, 0, 3, 1]]),
];

// Figure-eight knot complement, isometry signature dLQbcccdegj (three
// tetrahedra, a 2-3 move away from the two-tetrahedron one). Same sources.
const FIG8_3TET: &[([usize; 4], [[u8; 4]; 4])] = &[
    ([1, 2, 1, 2], [[0, 1, 3, 2], [0, 1, 3, 2], [0, 3, 2, 1], [0, 2, 1, 3]]),
    ([0, 2, 0, 2], [[0, 1, 3, 2], [1, 0, 2, 3], [0, 3, 2, 1], [1, 3, 0, 2]]),
    ([1, 0, 1, 0], [[1, 0, 2, 3], [0, 1, 3, 2], [2, 0, 3, 1], [0, 2, 1, 3]]),
];

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    /// Random pairing of the `4t` faces with random odd face maps; the result
    /// may have self-glued faces or fail to be a manifold.
    fn random_gluing(t: usize, rng: &mut StdRng) -> TriangulationDoc {
        let mut faces: Vec<(usize, usize)> = (0..t).flat_map(|j| (0..4).map(move |f| (j, f))).collect();
        faces.shuffle(rng);
        let gluings = faces
            .chunks(2)
            .map(|pair| {
                let ((j, f), (j2, f2)) = (pair[0], pair[1]);
                let choices: Vec<Perm4> = Perm4::all()
                    .into_iter()
                    .filter(|p| p.apply(f) == f2 && p.is_odd())
                    .collect();
                Gluing(j, f, j2, f2, choices[rng.gen_range(0..choices.len())])
            })
            .collect();
        TriangulationDoc { tets: t, gluings }
    }

    #[test]
    fn fig8_2tet_counts() {
        let tri = Triangulation::fixture("fig8-2tet").unwrap();
        assert_eq!(tri.num_tets(), 2);
        assert_eq!(tri.edge_classes().len(), 2);
        assert_eq!(tri.face_classes().len(), 4);
        assert!(tri.edge_classes().iter().all(|e| e.degree() == 6));
        assert_eq!(tri.vertex_classes().len(), 1);
        assert!(tri.has_torus_cusps());
    }

    #[test]
    fn fig8_3tet_counts() {
        let tri = Triangulation::fixture("fig8-3tet").unwrap();
        assert_eq!(tri.num_tets(), 3);
        assert_eq!(tri.edge_classes().len(), 3);
        assert_eq!(tri.face_classes().len(), 6);
        let mut deg: Vec<usize> = tri.edge_classes().iter().map(|e| e.degree()).collect();
        deg.sort();
        assert_eq!(deg, vec![3, 6, 9]);
        assert!(tri.has_torus_cusps());
    }

    #[test]
    fn unknown_fixture() {
        assert!(matches!(Triangulation::fixture("m003"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn dangling_face_is_reported() {
        let mut doc = Triangulation::fixture("fig8-2tet").unwrap().to_doc();
        let Gluing(j, f, _, _, _) = doc.gluings.pop().unwrap();
        let err = Triangulation::from_doc(&doc).unwrap_err();
        assert_eq!(err, GluingError::Dangling { tet: j, face: f });
    }

    #[test]
    fn bad_gluings_are_rejected() {
        let p = Perm4::new([1, 0, 2, 3]).unwrap();
        let doc = TriangulationDoc {
            tets: 1,
            gluings: vec![Gluing(0, 2, 0, 2, p)],
        };
        assert_eq!(
            Triangulation::from_doc(&doc).unwrap_err(),
            GluingError::SelfGluing { tet: 0, face: 2 }
        );
        let doc = TriangulationDoc {
            tets: 1,
            gluings: vec![Gluing(0, 0, 0, 2, p)],
        };
        assert!(matches!(
            Triangulation::from_doc(&doc).unwrap_err(),
            GluingError::InconsistentPerm { tet: 0, face: 0, .. }
        ));
        let even = Perm4::new([1, 0, 3, 2]).unwrap();
        let doc = TriangulationDoc {
            tets: 1,
            gluings: vec![Gluing(0, 0, 0, 1, even)],
        };
        assert!(matches!(
            Triangulation::from_doc(&doc).unwrap_err(),
            GluingError::NotOriented { .. }
        ));
        let mut doc = Triangulation::fixture("fig8-2tet").unwrap().to_doc();
        let Gluing(j, f, j2, f2, _) = doc.gluings[0];
        let other = Perm4::all()
            .into_iter()
            .find(|q| q.apply(f) == f2 && q.is_odd() && *q != doc.gluings[0].4)
            .unwrap();
        doc.gluings.push(Gluing(j, f, j2, f2, other));
        assert!(matches!(
            Triangulation::from_doc(&doc).unwrap_err(),
            GluingError::NotInvolutive { .. }
        ));
    }

    #[test]
    fn json_round_trip() {
        for name in FIXTURES {
            let tri = Triangulation::fixture(name).unwrap();
            let back = Triangulation::parse(&tri.to_json()).unwrap();
            assert_eq!(back, tri);
        }
        assert!(Triangulation::parse("{\"tets\": 1, \"gluings\": [[0, 0, 0, 1, [0, 0, 1, 2]]]}").is_err());
    }

    #[test]
    fn admissibility_examples() {
        let tri = Triangulation::fixture("fig8-2tet").unwrap();
        assert!(tri.coloring_admissible(&[0, 0]));
        // Every face of this triangulation has edge classes {x, x, y}.
        for fc in tri.face_classes() {
            let mut e = fc.edges;
            e.sort();
            assert!(e[0] == e[1] || e[1] == e[2]);
        }
        let fc = &tri.face_classes()[0];
        let twice = if fc.edges[0] == fc.edges[1] || fc.edges[0] == fc.edges[2] {
            fc.edges[0]
        } else {
            fc.edges[1]
        };
        let mut c = [0u64; 2];
        c[twice] = 1;
        c[1 - twice] = 1;
        assert!(!tri.coloring_admissible(&c));
        // A face with classes (x, x, y) and colors c_x = 1, c_y = 2 is the
        // boundary case 2 <= 1 + 1.
        assert!(AdmissibleTriple::is_admissible(1, 1, 2));
        c[1 - twice] = 2;
        let face_ok = |fc: &FaceClass| {
            let [x, y, z] = fc.edges.map(|k| c[k]);
            AdmissibleTriple::is_admissible(x, y, z)
        };
        assert!(face_ok(fc));
        assert_eq!(tri.coloring_admissible(&c), tri.face_classes().iter().all(face_ok));
    }

    #[test]
    fn perm_algebra() {
        for p in Perm4::all() {
            assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
            for q in Perm4::all() {
                assert_eq!(p.compose(&q).is_odd(), p.is_odd() != q.is_odd());
            }
        }
        assert_eq!(Perm4::all().len(), 24);
    }

    #[test]
    fn random_gluings_count_correctly() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut manifolds = 0;
        for t in 1..7 {
            for _ in 0..60 {
                let doc = random_gluing(t, &mut rng);
                let Ok(tri) = Triangulation::from_doc(&doc) else {
                    continue;
                };
                let inc: usize = tri.edge_classes().iter().map(|e| e.degree()).sum();
                assert_eq!(inc, 6 * t);
                assert_eq!(tri.face_classes().len(), 2 * t);
                let corners: usize = tri.vertex_classes().iter().map(|v| v.corners.len()).sum();
                assert_eq!(corners, 4 * t);
                assert_eq!(Triangulation::parse(&tri.to_json()).unwrap(), tri);
                if tri.edge_classes().iter().all(|e| !e.reversed) {
                    // Each edge has two link vertices, so the link Euler
                    // characteristics sum to 2E - 2t.
                    let chi: i64 = tri.vertex_classes().iter().map(|v| v.link_euler).sum();
                    assert_eq!(2 * tri.edge_classes().len() as i64 - 2 * t as i64, chi);
                    if tri.has_torus_cusps() {
                        manifolds += 1;
                        assert_eq!(tri.edge_classes().len(), t);
                    }
                }
            }
        }
        assert!(manifolds > 0);
    }
}
