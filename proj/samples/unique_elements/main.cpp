// Collects the unique elements of an input sequence.
#include <iostream>

#include "cselect/workload.hpp"
#include "cselect_types.hpp"

int main(int argc, char** argv) {
  cselect::Workload w;
  try {
    w = cselect::parse_workload(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  const auto input = cselect::workload_input(w);

  UniqueCon<int> unique_elements;
  for (int pass = 0; pass < w.insert; ++pass) {
    for (int v : input) unique_elements.insert(v);
  }

  long hits = 0;
  for (int pass = 0; pass < w.contains; ++pass) {
    for (int v : input) hits += unique_elements.contains(v);
  }
  for (int pass = 0; pass < w.remove; ++pass) {
    for (int v : input) unique_elements.remove(v);
  }

  if (w.print) {
    std::cout << "len " << unique_elements.len() << "\n";
    for (int v = 0; v < w.range; ++v) {
      if (unique_elements.contains(v)) std::cout << v << "\n";
    }
  }
  return hits < 0;
}
