#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "asmidx/molecular_graph.hpp"

// Brute-force references. Nothing here calls into the search engine or its
// isomorphism code.
namespace asmidx::oracle {

/// Smallest assembly pool for the graph by exhaustive search, not counting
/// the building blocks. Every connected part is a target. Throws std::invalid_argument when the graph has more than
/// max_edges bonds.
std::uint32_t brute_force_index(const MolecularGraph &graph,
                                std::size_t max_edges = 10);

/// Label-preserving isomorphism by trying vertex assignments.
bool permutation_isomorphic(const MolecularGraph &a, const MolecularGraph &b);

/// Length of the shortest addition chain for n, 1 <= n <= 1024.
std::uint32_t shortest_addition_chain(std::uint32_t n);

/// Shortest chain from 1 to l that contains m and never adds two numbers
/// that both exceed m. Requires 2 <= m <= l.
std::uint32_t conditional_chain_length(std::uint32_t l, std::uint32_t m);

/// Several targets built together: a chain from 1 to m over numbers <= m
/// that every target may draw on, then for each target a private run that
/// starts at a chain number and adds chain numbers, plus one join per
/// extra target.
std::uint32_t joint_conditional_chain_length(std::span<const std::uint32_t> ls,
                                             std::uint32_t m);

}  // namespace asmidx::oracle
