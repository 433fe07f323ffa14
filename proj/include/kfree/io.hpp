#pragma once

#include <string>
#include <vector>

#include "kfree/spectral.hpp"

namespace kfree {

// "1,0,1" -> x^2 + 1 (constant term first)
NumberField parse_field(const std::string& spec, bool assume_irreducible = false);

// One element: coordinate tuple "(8,-6)" or quadratic sugar "8-6i" / "3-2s"
// (i = sqrt(-1) when min_poly is x^2+1, s = the power-basis generator of any
// other quadratic field; plain integers work in every field).
Elem parse_elem(const NumberField& F, const std::string& text);

// Semicolon-separated element list.
std::vector<Elem> parse_shifts(const NumberField& F, const std::string& text);

// Generator-list ideal literal: elements joined by ';'.
Ideal parse_ideal(const NumberField& F, const std::string& text);

// 12 significant digits; exact zeros render as "0 (exact)".
std::string format_value(long double v, bool exact_zero);

std::string format_rat(const Rat& r);

}  // namespace kfree
