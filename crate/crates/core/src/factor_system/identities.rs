//! Factor-system identity tables and the evaluator that runs them.
//!
//! Each identity is an equation between sums of terms built from basis
//! elements `m, n, p` of A, basis elements `i, j, k` of B, the products of A
//! and B, the actions `φ_s(b)` / `φ'_s(b)` and the cocycles `f_s`. Every term
//! is multilinear in its basis arguments, so checking all basis assignments
//! checks the identity.

use std::sync::LazyLock;

use crate::algebra::{Algebra, BilinearMap, Side, Variety};
use crate::field::FieldSpec;
use crate::linalg::{add_vec, axpy, sub_vec, zeros, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum AVar {
    M = 0,
    N = 1,
    P = 2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BVar {
    I = 3,
    J = 4,
    K = 5,
}

/// A B-valued argument: a basis variable or a product of two.
#[derive(Clone, Copy, Debug)]
pub(crate) enum BArg {
    Var(BVar),
    Mul(usize, BVar, BVar),
}

/// An A-valued term.
#[derive(Clone, Debug)]
pub(crate) enum Term {
    A(AVar),
    Mul(usize, Box<Term>, Box<Term>),
    /// `φ_s(b)` for `Side::Left`, `φ'_s(b)` for `Side::Right`.
    Act(Side, usize, BArg, Box<Term>),
    F(usize, BArg, BArg),
}

#[derive(Clone, Debug)]
pub(crate) struct Identity {
    pub family: &'static str,
    /// Counted towards the identity-family total of the variety.
    pub counted: bool,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    vars: [bool; 6],
}

impl Identity {
    fn new(family: &'static str, lhs: Vec<Term>, rhs: Vec<Term>) -> Self {
        let mut vars = [false; 6];
        for t in lhs.iter().chain(&rhs) {
            t.collect_vars(&mut vars);
        }
        Identity {
            family,
            counted: true,
            lhs,
            rhs,
            vars,
        }
    }

    fn uncounted(mut self) -> Self {
        self.counted = false;
        self
    }

    pub fn uses_f(&self) -> bool {
        self.lhs.iter().chain(&self.rhs).any(Term::uses_f)
    }
}

impl BArg {
    fn collect_vars(&self, vars: &mut [bool; 6]) {
        match *self {
            BArg::Var(v) => vars[v as usize] = true,
            BArg::Mul(_, a, b) => {
                vars[a as usize] = true;
                vars[b as usize] = true;
            }
        }
    }
}

impl Term {
    fn collect_vars(&self, vars: &mut [bool; 6]) {
        match self {
            Term::A(v) => vars[*v as usize] = true,
            Term::Mul(_, x, y) => {
                x.collect_vars(vars);
                y.collect_vars(vars);
            }
            Term::Act(_, _, b, x) => {
                b.collect_vars(vars);
                x.collect_vars(vars);
            }
            Term::F(_, x, y) => {
                x.collect_vars(vars);
                y.collect_vars(vars);
            }
        }
    }

    fn uses_f(&self) -> bool {
        match self {
            Term::A(_) => false,
            Term::Mul(_, x, y) => x.uses_f() || y.uses_f(),
            Term::Act(_, _, _, x) => x.uses_f(),
            Term::F(..) => true,
        }
    }
}

// ---------------------------------------------------------------------------
// table-building shorthand

use AVar::{M, N, P};
use BVar::{I, J, K};

fn a(v: AVar) -> Term {
    Term::A(v)
}

fn b(v: BVar) -> BArg {
    BArg::Var(v)
}

fn bm(s: usize, x: BVar, y: BVar) -> BArg {
    BArg::Mul(s, x, y)
}

fn mul(s: usize, x: Term, y: Term) -> Term {
    Term::Mul(s, Box::new(x), Box::new(y))
}

fn phi(s: usize, by: BArg, x: Term) -> Term {
    Term::Act(Side::Left, s, by, Box::new(x))
}

fn phip(s: usize, by: BArg, x: Term) -> Term {
    Term::Act(Side::Right, s, by, Box::new(x))
}

fn f(s: usize, x: BArg, y: BArg) -> Term {
    Term::F(s, x, y)
}

fn eq(family: &'static str, lhs: Vec<Term>, rhs: Vec<Term>) -> Identity {
    Identity::new(family, lhs, rhs)
}

fn leibniz_table() -> Vec<Identity> {
    vec![
        eq(
            "1",
            vec![mul(0, a(M), phi(0, b(I), a(N)))],
            vec![mul(0, phip(0, b(I), a(M)), a(N)), phi(0, b(I), mul(0, a(M), a(N)))],
        ),
        eq(
            "2",
            vec![mul(0, a(M), phip(0, b(I), a(N)))],
            vec![phip(0, b(I), mul(0, a(M), a(N))), mul(0, a(N), phip(0, b(I), a(M)))],
        ),
        eq(
            "3",
            vec![mul(0, a(M), f(0, b(I), b(J))), phip(0, bm(0, I, J), a(M))],
            vec![phip(0, b(J), phip(0, b(I), a(M))), phi(0, b(I), phip(0, b(J), a(M)))],
        ),
        eq(
            "4",
            vec![phi(0, b(I), mul(0, a(M), a(N)))],
            vec![mul(0, phi(0, b(I), a(M)), a(N)), mul(0, a(M), phi(0, b(I), a(N)))],
        ),
        eq(
            "5",
            vec![phi(0, b(I), phi(0, b(J), a(M)))],
            vec![
                phi(0, bm(0, I, J), a(M)),
                phi(0, b(J), phi(0, b(I), a(M))),
                mul(0, f(0, b(I), b(J)), a(M)),
            ],
        ),
        eq(
            "6",
            vec![phi(0, b(I), phip(0, b(J), a(M)))],
            vec![
                phip(0, b(J), phi(0, b(I), a(M))),
                phip(0, bm(0, I, J), a(M)),
                mul(0, a(M), f(0, b(I), b(J))),
            ],
        ),
        eq(
            "7",
            vec![f(0, b(I), bm(0, J, K)), phi(0, b(I), f(0, b(J), b(K)))],
            vec![
                f(0, bm(0, I, J), b(K)),
                phip(0, b(K), f(0, b(I), b(J))),
                f(0, b(J), bm(0, I, K)),
                phi(0, b(J), f(0, b(I), b(K))),
            ],
        ),
    ]
}

fn lie_table() -> Vec<Identity> {
    vec![
        eq(
            "der",
            vec![phi(0, b(I), mul(0, a(M), a(N)))],
            vec![mul(0, phi(0, b(I), a(M)), a(N)), mul(0, a(M), phi(0, b(I), a(N)))],
        )
        .uncounted(),
        eq("1", vec![f(0, b(I), b(J)), f(0, b(J), b(I))], vec![]),
        eq("1", vec![f(0, b(I), b(I))], vec![]),
        // φ[i,j] = [φ(i),φ(j)] - ad_f(i,j)
        eq(
            "2",
            vec![
                phi(0, bm(0, I, J), a(M)),
                mul(0, f(0, b(I), b(J)), a(M)),
                phi(0, b(J), phi(0, b(I), a(M))),
            ],
            vec![phi(0, b(I), phi(0, b(J), a(M)))],
        ),
        eq(
            "3",
            vec![
                phi(0, b(K), f(0, b(I), b(J))),
                phi(0, b(I), f(0, b(J), b(K))),
                phi(0, b(J), f(0, b(K), b(I))),
            ],
            vec![
                f(0, bm(0, I, J), b(K)),
                f(0, bm(0, J, K), b(I)),
                f(0, bm(0, K, I), b(J)),
            ],
        ),
    ]
}

fn associative_table() -> Vec<Identity> {
    vec![
        eq(
            "1",
            vec![phi(0, b(I), phi(0, b(J), a(M)))],
            vec![phi(0, bm(0, I, J), a(M)), mul(0, f(0, b(I), b(J)), a(M))],
        ),
        // (m·j)·i = m·(j·i): the right-multiplier is f(j,i)
        eq(
            "2",
            vec![phip(0, b(I), phip(0, b(J), a(M)))],
            vec![phip(0, bm(0, J, I), a(M)), mul(0, a(M), f(0, b(J), b(I)))],
        ),
        eq(
            "3",
            vec![phi(0, b(I), phip(0, b(J), a(M)))],
            vec![phip(0, b(J), phi(0, b(I), a(M)))],
        ),
        eq(
            "4",
            vec![phip(0, b(I), mul(0, a(M), a(N)))],
            vec![mul(0, a(M), phip(0, b(I), a(N)))],
        ),
        eq(
            "5",
            vec![phi(0, b(I), mul(0, a(M), a(N)))],
            vec![mul(0, phi(0, b(I), a(M)), a(N))],
        ),
        eq(
            "6",
            vec![mul(0, phip(0, b(I), a(M)), a(N))],
            vec![mul(0, a(M), phi(0, b(I), a(N)))],
        ),
        eq(
            "7",
            vec![phi(0, b(I), f(0, b(J), b(K))), f(0, b(I), bm(0, J, K))],
            vec![phip(0, b(K), f(0, b(I), b(J))), f(0, bm(0, I, J), b(K))],
        ),
    ]
}

fn commutative_table() -> Vec<Identity> {
    vec![
        eq("1", vec![f(0, b(I), b(J))], vec![f(0, b(J), b(I))]),
        eq(
            "2",
            vec![phi(0, b(I), phi(0, b(J), a(M)))],
            vec![phi(0, bm(0, I, J), a(M)), mul(0, f(0, b(I), b(J)), a(M))],
        ),
        eq(
            "3",
            vec![phi(0, b(I), mul(0, a(M), a(N)))],
            vec![mul(0, a(M), phi(0, b(I), a(N)))],
        ),
        eq(
            "3",
            vec![phi(0, b(I), mul(0, a(M), a(N)))],
            vec![mul(0, phi(0, b(I), a(M)), a(N))],
        ),
        eq(
            "4",
            vec![phi(0, b(I), f(0, b(J), b(K))), f(0, b(I), bm(0, J, K))],
            vec![phi(0, b(K), f(0, b(I), b(J))), f(0, bm(0, I, J), b(K))],
        ),
    ]
}

fn zinbiel_table() -> Vec<Identity> {
    vec![
        eq(
            "1",
            vec![mul(0, phi(0, b(I), a(N)), a(P))],
            vec![phi(0, b(I), mul(0, a(N), a(P))), phi(0, b(I), mul(0, a(P), a(N)))],
        ),
        eq(
            "2",
            vec![mul(0, phip(0, b(J), a(M)), a(P))],
            vec![mul(0, a(M), phi(0, b(J), a(P))), mul(0, a(M), phip(0, b(J), a(P)))],
        ),
        eq(
            "3",
            vec![phip(0, b(K), mul(0, a(M), a(N)))],
            vec![mul(0, a(M), phi(0, b(K), a(N))), mul(0, a(M), phip(0, b(K), a(N)))],
        ),
        eq(
            "4",
            vec![mul(0, f(0, b(I), b(J)), a(P)), phi(0, bm(0, I, J), a(P))],
            vec![phi(0, b(I), phi(0, b(J), a(P))), phi(0, b(I), phip(0, b(J), a(P)))],
        ),
        eq(
            "5",
            vec![phip(0, b(K), phi(0, b(I), a(N)))],
            vec![phi(0, b(I), phi(0, b(K), a(N))), phi(0, b(I), phip(0, b(K), a(N)))],
        ),
        eq(
            "6",
            vec![phip(0, b(K), phip(0, b(J), a(M)))],
            vec![
                mul(0, a(M), f(0, b(J), b(K))),
                mul(0, a(M), f(0, b(K), b(J))),
                phip(0, bm(0, J, K), a(M)),
                phip(0, bm(0, K, J), a(M)),
            ],
        ),
        eq(
            "7",
            vec![phip(0, b(K), f(0, b(I), b(J))), f(0, bm(0, I, J), b(K))],
            vec![
                phi(0, b(I), f(0, b(J), b(K))),
                phi(0, b(I), f(0, b(K), b(J))),
                f(0, b(I), bm(0, J, K)),
                f(0, b(I), bm(0, K, J)),
            ],
        ),
    ]
}

const DL: usize = 0; // ⊣
const DR: usize = 1; // ⊢

/// The seven identities shared by both associativity families of a
/// diassociative factor system, for the product `s`.
fn dias_assoc(s: usize, ids: [&'static str; 7]) -> Vec<Identity> {
    vec![
        eq(
            ids[0],
            vec![mul(s, a(M), phi(s, b(J), a(P)))],
            vec![mul(s, phip(s, b(J), a(M)), a(P))],
        ),
        eq(
            ids[1],
            vec![mul(s, a(M), phip(s, b(K), a(N)))],
            vec![phip(s, b(K), mul(s, a(M), a(N)))],
        ),
        eq(
            ids[2],
            vec![mul(s, a(M), f(s, b(J), b(K))), phip(s, bm(s, J, K), a(M))],
            vec![phip(s, b(K), phip(s, b(J), a(M)))],
        ),
        eq(
            ids[3],
            vec![phi(s, b(I), mul(s, a(N), a(P)))],
            vec![mul(s, phi(s, b(I), a(N)), a(P))],
        ),
        eq(
            ids[4],
            vec![phi(s, b(I), phi(s, b(J), a(P)))],
            vec![phi(s, bm(s, I, J), a(P)), mul(s, f(s, b(I), b(J)), a(P))],
        ),
        eq(
            ids[5],
            vec![phi(s, b(I), phip(s, b(K), a(N)))],
            vec![phip(s, b(K), phi(s, b(I), a(N)))],
        ),
        eq(
            ids[6],
            vec![phi(s, b(I), f(s, b(J), b(K))), f(s, b(I), bm(s, J, K))],
            vec![phip(s, b(K), f(s, b(I), b(J))), f(s, bm(s, I, J), b(K))],
        ),
    ]
}

fn diassociative_table() -> Vec<Identity> {
    let mut t = vec![
        // resembling D1: x⊣(y⊣z) = x⊣(y⊢z)
        eq(
            "1a",
            vec![mul(DL, a(M), phi(DL, b(J), a(P)))],
            vec![mul(DL, a(M), phi(DR, b(J), a(P)))],
        ),
        eq(
            "1b",
            vec![mul(DL, a(M), phip(DL, b(K), a(N)))],
            vec![mul(DL, a(M), phip(DR, b(K), a(N)))],
        ),
        eq(
            "1c",
            vec![mul(DL, a(M), f(DL, b(J), b(K))), phip(DL, bm(DL, J, K), a(M))],
            vec![mul(DL, a(M), f(DR, b(J), b(K))), phip(DL, bm(DR, J, K), a(M))],
        ),
        eq(
            "1d",
            vec![phi(DL, b(I), mul(DL, a(N), a(P)))],
            vec![phi(DL, b(I), mul(DR, a(N), a(P)))],
        ),
        eq(
            "1e",
            vec![phi(DL, b(I), phi(DL, b(J), a(P)))],
            vec![phi(DL, b(I), phi(DR, b(J), a(P)))],
        ),
        eq(
            "1f",
            vec![phi(DL, b(I), phip(DL, b(K), a(N)))],
            vec![phi(DL, b(I), phip(DR, b(K), a(N)))],
        ),
        eq(
            "1g",
            vec![phi(DL, b(I), f(DL, b(J), b(K))), f(DL, b(I), bm(DL, J, K))],
            vec![phi(DL, b(I), f(DR, b(J), b(K))), f(DL, b(I), bm(DR, J, K))],
        ),
        // resembling D2: (x⊢y)⊣z = x⊢(y⊣z)
        eq(
            "2a",
            vec![mul(DL, phi(DR, b(I), a(N)), a(P))],
            vec![phi(DR, b(I), mul(DL, a(N), a(P)))],
        ),
        eq(
            "2b",
            vec![mul(DL, phip(DR, b(J), a(M)), a(P))],
            vec![mul(DR, a(M), phi(DL, b(J), a(P)))],
        ),
        eq(
            "2c",
            vec![mul(DL, f(DR, b(I), b(J)), a(P)), phi(DL, bm(DR, I, J), a(P))],
            vec![phi(DR, b(I), phi(DL, b(J), a(P)))],
        ),
        eq(
            "2d",
            vec![phip(DL, b(K), mul(DR, a(M), a(N)))],
            vec![mul(DR, a(M), phip(DL, b(K), a(N)))],
        ),
        eq(
            "2e",
            vec![phip(DL, b(K), phi(DR, b(I), a(N)))],
            vec![phi(DR, b(I), phip(DL, b(K), a(N)))],
        ),
        // m⊢(T(j)⊣T(k)) carries the f⊣(j,k) term as well
        eq(
            "2f",
            vec![phip(DL, b(K), phip(DR, b(J), a(M)))],
            vec![phip(DR, bm(DL, J, K), a(M)), mul(DR, a(M), f(DL, b(J), b(K)))],
        ),
        eq(
            "2g",
            vec![phip(DL, b(K), f(DR, b(I), b(J))), f(DL, bm(DR, I, J), b(K))],
            vec![phi(DR, b(I), f(DL, b(J), b(K))), f(DR, b(I), bm(DL, J, K))],
        ),
        // resembling D3: (x⊣y)⊢z = (x⊢y)⊢z
        eq(
            "3a",
            vec![mul(DR, phi(DL, b(I), a(N)), a(P))],
            vec![mul(DR, phi(DR, b(I), a(N)), a(P))],
        ),
        eq(
            "3b",
            vec![mul(DR, phip(DL, b(J), a(M)), a(P))],
            vec![mul(DR, phip(DR, b(J), a(M)), a(P))],
        ),
        eq(
            "3c",
            vec![mul(DR, f(DL, b(I), b(J)), a(P)), phi(DR, bm(DL, I, J), a(P))],
            vec![mul(DR, f(DR, b(I), b(J)), a(P)), phi(DR, bm(DR, I, J), a(P))],
        ),
        eq(
            "3d",
            vec![phip(DR, b(K), mul(DL, a(M), a(N)))],
            vec![phip(DR, b(K), mul(DR, a(M), a(N)))],
        ),
        eq(
            "3e",
            vec![phip(DR, b(K), phi(DL, b(I), a(N)))],
            vec![phip(DR, b(K), phi(DR, b(I), a(N)))],
        ),
        eq(
            "3f",
            vec![phip(DR, b(K), phip(DL, b(J), a(M)))],
            vec![phip(DR, b(K), phip(DR, b(J), a(M)))],
        ),
        eq(
            "3g",
            vec![phip(DR, b(K), f(DL, b(I), b(J))), f(DR, bm(DL, I, J), b(K))],
            vec![phip(DR, b(K), f(DR, b(I), b(J))), f(DR, bm(DR, I, J), b(K))],
        ),
    ];
    t.extend(dias_assoc(DL, ["4a", "4b", "4c", "4d", "4e", "4f", "4g"]));
    t.extend(dias_assoc(DR, ["5a", "5b", "5c", "5d", "5e", "5f", "5g"]));
    t
}

const LT: usize = 0; // <
const GT: usize = 1; // >

fn dendriform_table() -> Vec<Identity> {
    vec![
        // resembling E1: (x<y)<z = x<(y<z) + x<(y>z)
        eq(
            "1a",
            vec![mul(LT, phi(LT, b(I), a(N)), a(P))],
            vec![phi(LT, b(I), mul(LT, a(N), a(P))), phi(LT, b(I), mul(GT, a(N), a(P)))],
        ),
        eq(
            "1b",
            vec![mul(LT, phip(LT, b(J), a(M)), a(P))],
            vec![mul(LT, a(M), phi(LT, b(J), a(P))), mul(LT, a(M), phi(GT, b(J), a(P)))],
        ),
        eq(
            "1c",
            vec![mul(LT, f(LT, b(I), b(J)), a(P)), phi(LT, bm(LT, I, J), a(P))],
            vec![phi(LT, b(I), phi(LT, b(J), a(P))), phi(LT, b(I), phi(GT, b(J), a(P)))],
        ),
        eq(
            "1d",
            vec![phip(LT, b(K), mul(LT, a(M), a(N)))],
            vec![mul(LT, a(M), phip(LT, b(K), a(N))), mul(LT, a(M), phip(GT, b(K), a(N)))],
        ),
        eq(
            "1e",
            vec![phip(LT, b(K), phi(LT, b(I), a(N)))],
            vec![phi(LT, b(I), phip(LT, b(K), a(N))), phi(LT, b(I), phip(GT, b(K), a(N)))],
        ),
        eq(
            "1f",
            vec![phip(LT, b(K), phip(LT, b(J), a(M)))],
            vec![
                mul(LT, a(M), f(LT, b(J), b(K))),
                phip(LT, bm(LT, J, K), a(M)),
                mul(LT, a(M), f(GT, b(J), b(K))),
                phip(LT, bm(GT, J, K), a(M)),
            ],
        ),
        eq(
            "1g",
            vec![phip(LT, b(K), f(LT, b(I), b(J))), f(LT, bm(LT, I, J), b(K))],
            vec![
                phi(LT, b(I), f(LT, b(J), b(K))),
                f(LT, b(I), bm(LT, J, K)),
                phi(LT, b(I), f(GT, b(J), b(K))),
                f(LT, b(I), bm(GT, J, K)),
            ],
        ),
        // resembling E2: (x>y)<z = x>(y<z)
        eq(
            "2a",
            vec![mul(LT, phi(GT, b(I), a(N)), a(P))],
            vec![phi(GT, b(I), mul(LT, a(N), a(P)))],
        ),
        eq(
            "2b",
            vec![mul(LT, phip(GT, b(J), a(M)), a(P))],
            vec![mul(GT, a(M), phi(LT, b(J), a(P)))],
        ),
        eq(
            "2c",
            vec![mul(LT, f(GT, b(I), b(J)), a(P)), phi(LT, bm(GT, I, J), a(P))],
            vec![phi(GT, b(I), phi(LT, b(J), a(P)))],
        ),
        eq(
            "2d",
            vec![phip(LT, b(K), mul(GT, a(M), a(N)))],
            vec![mul(GT, a(M), phip(LT, b(K), a(N)))],
        ),
        eq(
            "2e",
            vec![phip(LT, b(K), phi(GT, b(I), a(N)))],
            vec![phi(GT, b(I), phip(LT, b(K), a(N)))],
        ),
        eq(
            "2f",
            vec![phip(LT, b(K), phip(GT, b(J), a(M)))],
            vec![phip(GT, bm(LT, J, K), a(M)), mul(GT, a(M), f(LT, b(J), b(K)))],
        ),
        eq(
            "2g",
            vec![phip(LT, b(K), f(GT, b(I), b(J))), f(LT, bm(GT, I, J), b(K))],
            vec![phi(GT, b(I), f(LT, b(J), b(K))), f(GT, b(I), bm(LT, J, K))],
        ),
        // resembling E3: (x<y)>z + (x>y)>z = x>(y>z)
        eq(
            "3a",
            vec![mul(GT, phi(LT, b(I), a(N)), a(P)), mul(GT, phi(GT, b(I), a(N)), a(P))],
            vec![phi(GT, b(I), mul(GT, a(N), a(P)))],
        ),
        eq(
            "3b",
            vec![mul(GT, phip(LT, b(J), a(M)), a(P)), mul(GT, phip(GT, b(J), a(M)), a(P))],
            vec![mul(GT, a(M), phi(GT, b(J), a(P)))],
        ),
        eq(
            "3c",
            vec![
                mul(GT, f(LT, b(I), b(J)), a(P)),
                phi(GT, bm(LT, I, J), a(P)),
                mul(GT, f(GT, b(I), b(J)), a(P)),
                phi(GT, bm(GT, I, J), a(P)),
            ],
            vec![phi(GT, b(I), phi(GT, b(J), a(P)))],
        ),
        eq(
            "3d",
            vec![phip(GT, b(K), mul(LT, a(M), a(N))), phip(GT, b(K), mul(GT, a(M), a(N)))],
            vec![mul(GT, a(M), phip(GT, b(K), a(N)))],
        ),
        eq(
            "3e",
            vec![phip(GT, b(K), phi(LT, b(I), a(N))), phip(GT, b(K), phi(GT, b(I), a(N)))],
            vec![phi(GT, b(I), phip(GT, b(K), a(N)))],
        ),
        eq(
            "3f",
            vec![
                phip(GT, b(K), phip(LT, b(J), a(M))),
                phip(GT, b(K), phip(GT, b(J), a(M))),
            ],
            vec![mul(GT, a(M), f(GT, b(J), b(K))), phip(GT, bm(GT, J, K), a(M))],
        ),
        eq(
            "3g",
            vec![
                phip(GT, b(K), f(LT, b(I), b(J))),
                f(GT, bm(LT, I, J), b(K)),
                phip(GT, b(K), f(GT, b(I), b(J))),
                f(GT, bm(GT, I, J), b(K)),
            ],
            vec![phi(GT, b(I), f(GT, b(J), b(K))), f(GT, b(I), bm(GT, J, K))],
        ),
    ]
}

static TABLES: LazyLock<[Vec<Identity>; 7]> = LazyLock::new(|| {
    [
        lie_table(),
        leibniz_table(),
        associative_table(),
        commutative_table(),
        zinbiel_table(),
        diassociative_table(),
        dendriform_table(),
    ]
});

pub(crate) fn table(variety: Variety) -> &'static [Identity] {
    let idx = Variety::ALL.iter().position(|&v| v == variety).expect("known variety");
    &TABLES[idx]
}

/// Distinct counted family ids of a table, in table order.
pub(crate) fn families(variety: Variety) -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for id in table(variety).iter().filter(|id| id.counted) {
        if !out.contains(&id.family) {
            out.push(id.family);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// evaluation

/// Everything an identity needs: both algebras, the full action (left and
/// right maps for every product) and the cocycles.
pub(crate) struct EvalContext<'a> {
    pub a: &'a Algebra,
    pub b: &'a Algebra,
    /// `left[s][t]` is `φ_s(e_t)`.
    pub left: &'a [Vec<Matrix>],
    /// `right[s][t]` is `φ'_s(e_t)`.
    pub right: &'a [Vec<Matrix>],
    pub f: &'a [BilinearMap],
}

/// Residual of one identity at one basis assignment.
pub(crate) struct Residual {
    pub family: &'static str,
    pub indices: Vec<usize>,
    pub value: Vector,
}

impl EvalContext<'_> {
    fn field(&self) -> FieldSpec {
        self.a.field()
    }

    fn barg(&self, arg: BArg, env: &[usize; 6]) -> Vector {
        match arg {
            BArg::Var(v) => self.b.basis(env[v as usize]),
            BArg::Mul(s, x, y) => self.b.product(s).get(env[x as usize], env[y as usize]).to_vec(),
        }
    }

    fn eval(&self, t: &Term, env: &[usize; 6]) -> Vector {
        match t {
            Term::A(v) => self.a.basis(env[*v as usize]),
            Term::Mul(s, x, y) => self.a.mul(*s, &self.eval(x, env), &self.eval(y, env)),
            Term::Act(side, s, by, x) => {
                let coeffs = self.barg(*by, env);
                let arg = self.eval(x, env);
                let maps = match side {
                    Side::Left => &self.left[*s],
                    Side::Right => &self.right[*s],
                };
                let mut out = zeros(self.field(), self.a.dim());
                for (t, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        axpy(&mut out, c, &maps[t].mul_vec(&arg));
                    }
                }
                out
            }
            Term::F(s, x, y) => self.f[*s].apply(&self.barg(*x, env), &self.barg(*y, env)),
        }
    }

    fn side_sum(&self, terms: &[Term], env: &[usize; 6]) -> Vector {
        let mut out = zeros(self.field(), self.a.dim());
        for t in terms {
            out = add_vec(&out, &self.eval(t, env));
        }
        out
    }

    /// Residuals `lhs - rhs` of every identity at every basis assignment, in
    /// table order and then lexicographic index order. Zero residuals are
    /// included when `keep_zero` is set.
    pub fn residuals(&self, ids: &[Identity], keep_zero: bool) -> Vec<Residual> {
        let mut out = Vec::new();
        let dims = [
            self.a.dim(),
            self.a.dim(),
            self.a.dim(),
            self.b.dim(),
            self.b.dim(),
            self.b.dim(),
        ];
        for id in ids {
            let used: Vec<usize> = (0..6).filter(|&v| id.vars[v]).collect();
            let mut env = [0usize; 6];
            for_each_assignment(&used, &dims, &mut env, &mut |env| {
                let value = sub_vec(&self.side_sum(&id.lhs, env), &self.side_sum(&id.rhs, env));
                if keep_zero || !crate::linalg::is_zero_vec(&value) {
                    out.push(Residual {
                        family: id.family,
                        indices: used.iter().map(|&v| env[v]).collect(),
                        value,
                    });
                }
            });
        }
        out
    }
}

fn for_each_assignment(used: &[usize], dims: &[usize; 6], env: &mut [usize; 6], visit: &mut dyn FnMut(&[usize; 6])) {
    match used.split_first() {
        None => visit(env),
        Some((&v, rest)) => {
            for x in 0..dims[v] {
                env[v] = x;
                for_each_assignment(rest, dims, env, visit);
            }
        }
    }
}

/// Flattened residual vector of every identity at every assignment.
pub(crate) fn residual_vector(ctx: &EvalContext<'_>, ids: &[Identity]) -> Vector {
    ctx.residuals(ids, true).into_iter().flat_map(|r| r.value).collect()
}
