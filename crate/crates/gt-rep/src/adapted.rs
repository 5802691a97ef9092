//! Adaptedness check: every generator of G_{m−1} must act at a level-m
//! vertex block-diagonally by path prefix, with the block at a level-(m−1)
//! vertex β equal to its own matrix at β.

use crate::rep::{AdaptedRep, C64};

const TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub generator: usize,
    pub vertex: usize,
    /// Prefix vertices at level m−1 of the row and column paths.
    pub blocks: (usize, usize),
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AdaptednessReport {
    pub checked: usize,
    pub max_residual: f64,
    pub violations: Vec<Violation>,
}

impl AdaptednessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_adapted(rep: &AdaptedRep) -> AdaptednessReport {
    let d = rep.diagram();
    let mut report = AdaptednessReport::default();
    let gens = rep.chain().generators();
    for m in 1..=rep.n() {
        for &alpha in d.level(m) {
            let paths = rep.paths(alpha);
            for g in gens.iter().filter(|g| g.levels.1 < m) {
                let Ok(big) = rep.generator_matrix(g.index, alpha) else { continue };
                report.checked += 1;
                // Worst residual per (row prefix, column prefix) block.
                let mut worst: std::collections::BTreeMap<(usize, usize), f64> = Default::default();
                for (i, p) in paths.iter().enumerate() {
                    for (j, q) in paths.iter().enumerate() {
                        let (bp, bq) = (p.at(m - 1), q.at(m - 1));
                        let expect = if bp == bq {
                            let small = rep.generator_matrix(g.index, bp).expect("defined one level down");
                            let (si, sj) = (
                                rep.path_index(bp, &p.vertices[..m]).expect("prefix is a path"),
                                rep.path_index(bq, &q.vertices[..m]).expect("prefix is a path"),
                            );
                            small[(si, sj)]
                        } else {
                            C64::new(0.0, 0.0)
                        };
                        let r = (big[(i, j)] - expect).norm();
                        let e = worst.entry((bp, bq)).or_insert(0.0);
                        *e = e.max(r);
                    }
                }
                for ((bp, bq), r) in worst {
                    report.max_residual = report.max_residual.max(r);
                    if r > TOL {
                        report.violations.push(Violation { generator: g.index, vertex: alpha, blocks: (bp, bq), residual: r });
                    }
                }
            }
        }
    }
    report
}
