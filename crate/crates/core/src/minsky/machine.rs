use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const STATES: u8 = 7;
pub const COLORS: u8 = 4;
/// The only (state, color) pair without a move.
pub const STOP_PAIR: (u8, u8) = (4, 3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Instruction {
    /// Recolor the current cell to `color`, move the head, switch to `state`.
    Move {
        direction: Direction,
        state: u8,
        color: u8,
    },
    Stop,
}

/// A 7-state, 4-color instruction table indexed by (state, color).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineSpec {
    table: [[Instruction; COLORS as usize]; STATES as usize],
}

const fn mv(direction: Direction, state: u8, color: u8) -> Instruction {
    Instruction::Move {
        direction,
        state,
        color,
    }
}

use Direction::{L, R};

/// Minsky's universal machine.
const UTM: [[Instruction; 4]; 7] = [
    [mv(L, 4, 1), mv(L, 1, 3), mv(R, 0, 0), mv(R, 0, 1)],
    [mv(L, 1, 2), mv(L, 1, 3), mv(R, 0, 0), mv(L, 1, 3)],
    [mv(R, 2, 2), mv(R, 2, 1), mv(R, 2, 0), mv(L, 4, 1)],
    [mv(R, 3, 2), mv(R, 3, 1), mv(R, 3, 0), mv(L, 4, 0)],
    [mv(L, 5, 2), mv(L, 4, 1), mv(L, 4, 0), Instruction::Stop],
    [mv(L, 5, 2), mv(L, 5, 1), mv(L, 6, 2), mv(R, 2, 1)],
    [mv(R, 0, 3), mv(R, 6, 3), mv(R, 6, 2), mv(R, 3, 1)],
];

/// The 28-entry table of the 7-state, 4-color universal machine.
pub fn utm_table() -> MachineSpec {
    MachineSpec { table: UTM }
}

impl MachineSpec {
    pub fn entry(&self, state: u8, color: u8) -> Instruction {
        self.table[state as usize][color as usize]
    }

    /// All (state, color) pairs whose instruction moves in `dir`, in
    /// row-major order.
    pub fn pairs(&self, dir: Direction) -> Vec<(u8, u8)> {
        self.all_pairs()
            .filter(|&(i, j)| {
                matches!(self.entry(i, j), Instruction::Move { direction, .. } if direction == dir)
            })
            .collect()
    }

    pub fn left_pairs(&self) -> Vec<(u8, u8)> {
        self.pairs(Direction::L)
    }

    pub fn right_pairs(&self) -> Vec<(u8, u8)> {
        self.pairs(Direction::R)
    }

    fn all_pairs(&self) -> impl Iterator<Item = (u8, u8)> {
        (0..STATES).flat_map(|i| (0..COLORS).map(move |j| (i, j)))
    }

    /// New state `q(i,j)` and new color `p(i,j)` of a moving pair.
    pub fn target(&self, state: u8, color: u8) -> Option<(u8, u8)> {
        match self.entry(state, color) {
            Instruction::Move { state, color, .. } => Some((state, color)),
            Instruction::Stop => None,
        }
    }
}

/// A full machine state: tape cells left of the head (leftmost first), the
/// head's state and cell color, and cells to the right.
///
/// Color-0 cells are kept verbatim; nothing is trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MachineConfig {
    pub left: Vec<u8>,
    pub state: u8,
    pub current: u8,
    pub right: Vec<u8>,
}

impl MachineConfig {
    pub fn new(left: Vec<u8>, state: u8, current: u8, right: Vec<u8>) -> Result<Self> {
        if state >= STATES {
            return Err(Error::InvalidConfig(format!("state {state} outside 0..6")));
        }
        if let Some(bad) = left
            .iter()
            .chain(right.iter())
            .chain(std::iter::once(&current))
            .find(|&&c| c >= COLORS)
        {
            return Err(Error::InvalidConfig(format!("color {bad} outside 0..3")));
        }
        Ok(MachineConfig {
            left,
            state,
            current,
            right,
        })
    }

    pub fn is_stop(&self) -> bool {
        (self.state, self.current) == STOP_PAIR
    }

    /// Number of tape cells, head cell included.
    pub fn tape_len(&self) -> usize {
        self.left.len() + 1 + self.right.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(MachineConfig),
    Halted,
}

/// One machine step. Moving off either end of the tape creates a new
/// color-0 cell.
pub fn tm_step(spec: &MachineSpec, c: &MachineConfig) -> Step {
    let Instruction::Move {
        direction,
        state,
        color,
    } = spec.entry(c.state, c.current)
    else {
        return Step::Halted;
    };
    let mut next = c.clone();
    next.state = state;
    match direction {
        Direction::L => {
            next.right.insert(0, color);
            next.current = next.left.pop().unwrap_or(0);
        }
        Direction::R => {
            next.left.push(color);
            next.current = if next.right.is_empty() {
                0
            } else {
                next.right.remove(0)
            };
        }
    }
    Step::Next(next)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub configs: Vec<MachineConfig>,
    pub halted: bool,
}

impl Trace {
    /// Number of transitions performed.
    pub fn steps(&self) -> usize {
        self.configs.len() - 1
    }
}

/// Runs up to `max_steps` transitions; `halted` is set once the machine
/// sits on the stop pair.
pub fn simulate(spec: &MachineSpec, c: &MachineConfig, max_steps: usize) -> Trace {
    let mut configs = vec![c.clone()];
    let mut current = c.clone();
    for _ in 0..max_steps {
        if current.is_stop() {
            break;
        }
        match tm_step(spec, &current) {
            Step::Next(next) => {
                configs.push(next.clone());
                current = next;
            }
            Step::Halted => break,
        }
    }
    Trace {
        halted: current.is_stop(),
        configs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(left: &[u8], state: u8, current: u8, right: &[u8]) -> MachineConfig {
        MachineConfig::new(left.to_vec(), state, current, right.to_vec()).unwrap()
    }

    #[test]
    fn table_entries() {
        let m = utm_table();
        assert_eq!(m.entry(2, 3), mv(L, 4, 1));
        assert_eq!(m.entry(4, 3), Instruction::Stop);
        assert_eq!(m.entry(0, 2), mv(R, 0, 0));
        assert_eq!(m.left_pairs().len(), 13);
        assert_eq!(m.right_pairs().len(), 14);
        let stops = (0..7)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| m.entry(i, j) == Instruction::Stop)
            .collect::<Vec<_>>();
        assert_eq!(stops, vec![STOP_PAIR]);
    }

    #[test]
    fn step_examples() {
        let m = utm_table();
        // (2,3) -> (L,4,1): head moves onto a3, old cell becomes 1
        assert_eq!(
            tm_step(&m, &cfg(&[3], 2, 3, &[])),
            Step::Next(cfg(&[], 4, 3, &[1]))
        );
        // (0,2) -> (R,0,0)
        assert_eq!(
            tm_step(&m, &cfg(&[], 0, 2, &[1])),
            Step::Next(cfg(&[0], 0, 1, &[]))
        );
        assert_eq!(tm_step(&m, &cfg(&[], 4, 3, &[])), Step::Halted);
    }

    #[test]
    fn edges_create_blank_cells() {
        let m = utm_table();
        // left move with empty left tape: (0,0) -> (L,4,1)
        assert_eq!(
            tm_step(&m, &cfg(&[], 0, 0, &[])),
            Step::Next(cfg(&[], 4, 0, &[1]))
        );
        // right move with empty right tape: (2,0) -> (R,2,2)
        assert_eq!(
            tm_step(&m, &cfg(&[], 2, 0, &[])),
            Step::Next(cfg(&[2], 2, 0, &[]))
        );
    }

    #[test]
    fn simulate_examples() {
        let m = utm_table();
        let halting = cfg(&[3], 2, 3, &[]);
        let t = simulate(&m, &halting, 10);
        assert_eq!(t.configs.len(), 2);
        assert!(t.halted);

        let t = simulate(&m, &halting, 0);
        assert_eq!(t.configs, vec![halting]);
        assert!(!t.halted);
        assert!(simulate(&m, &cfg(&[], 4, 3, &[]), 0).halted);

        // (2,0) -> (R,2,2) keeps running right forever
        let t = simulate(&m, &cfg(&[], 2, 0, &[]), 100);
        assert_eq!(t.configs.len(), 101);
        assert!(!t.halted);
        assert_eq!(t.configs[100].left, vec![2; 100]);
    }

    #[test]
    fn config_validation() {
        assert!(MachineConfig::new(vec![], 7, 0, vec![]).is_err());
        assert!(MachineConfig::new(vec![4], 0, 0, vec![]).is_err());
        assert!(MachineConfig::new(vec![], 0, 0, vec![9]).is_err());
    }
}
