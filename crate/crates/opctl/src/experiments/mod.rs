pub mod algebra_cmds;
pub mod bernstein_cmds;
pub mod grid_cmds;
pub mod matrix_cmds;
pub mod quanta_cmds;
