#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "asmidx/molecular_graph.hpp"

// Synthetic molecules for tests, the verify suites and batch corpora.
namespace asmidx::fixtures {

/// Path of n bonds over carbon atoms, all with bond label "1".
MolecularGraph chain(std::size_t n);

/// Path of n bonds; bond i gets label "2" when bit i of `pattern` is set.
MolecularGraph chain_from_bits(std::size_t n, std::uint64_t pattern);

/// Cycle of n atoms with one atom and one bond label.
MolecularGraph ring(std::size_t n, const std::string &atom = "C",
                    const std::string &bond = "4");

struct RandomSpec {
  std::size_t min_edges = 1;
  std::size_t max_edges = 8;
  std::size_t atom_types = 2;  // drawn from C, N, O, S, P, Cl
  std::size_t bond_types = 2;  // labels "1", "2", "3", "4"
};

/// Connected simple graph: a random spanning tree plus random extra bonds.
MolecularGraph random_connected(std::mt19937_64 &rng, const RandomSpec &spec);

/// Same molecule with vertex ids and bond order shuffled.
MolecularGraph permuted(const MolecularGraph &graph, std::mt19937_64 &rng);

}  // namespace asmidx::fixtures
