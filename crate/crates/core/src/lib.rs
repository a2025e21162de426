pub mod coloring;
pub mod game;
pub mod graph;
pub mod prob;
pub mod xi;
