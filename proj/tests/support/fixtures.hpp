#pragma once

#include <string>
#include <vector>

#include "snfc/code_builder.hpp"
#include "snfc/function_table.hpp"
#include "snfc/linear_code.hpp"
#include "snfc/verifier.hpp"

/// Worked examples: the reverse butterfly (multiplication over F_3*) and the
/// three-source F_3 network computing m1 + m2 + 2 m3.
namespace fixtures {

std::string data_path(const std::string& name);

snfc::Network butterfly_network();
snfc::TabularFunction butterfly_product();
snfc::TabularFunction butterfly_identity();
/// Hand-built (1,1) code; F_3* = {1, 2} is labelled {0, 1} so products are XORs.
snfc::TabularCode butterfly_code();

snfc::Network relay_network();
snfc::GfMatrix relay_target();
snfc::GfMatrix relay_upsilon();
/// Reference rate-3 base code with unit combining coefficients.
snfc::LinearSecureCode relay_base_code();
/// B = [[1,0,0],[0,0,1],[2,1,2]] shared by all sources.
snfc::TransformMatrix relay_reference_transform();
/// Reference global vectors ĝ_{e1} .. ĝ_{e21} of the secure code (length 9 each).
std::vector<std::vector<snfc::Elem>> relay_reference_globals();
snfc::CodeParameters relay_secure_parameters();

}  // namespace fixtures
