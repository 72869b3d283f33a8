#include "fixtures.hpp"

namespace fixtures {

std::string data_path(const std::string& name) { return std::string(SNFC_TEST_DATA_DIR) + "/" + name; }

snfc::Network butterfly_network() { return snfc::read_network_file(data_path("butterfly.net")); }
snfc::TabularFunction butterfly_product() { return snfc::read_tabular_file(data_path("butterfly_product.tab")); }
snfc::TabularFunction butterfly_identity() { return snfc::read_tabular_file(data_path("butterfly_identity.tab")); }

snfc::TabularCode butterfly_code() {
  snfc::TabularCode code;
  code.network = butterfly_network();
  code.message_alphabet = {2, 2};
  code.key_alphabet = {2, 2};
  code.edge_alphabet = 2;
  const std::vector<std::uint32_t> key{0, 1, 0, 1};
  const std::vector<std::uint32_t> product{0, 1, 1, 0};
  const std::vector<std::uint32_t> copy{0, 1};
  const std::vector<std::uint32_t> first{0, 0, 1, 1};
  // e1 k1, e2 m1k1, e3 m2k2, e4 k2, e5 m1k1m2k2, e6/e7 copy e5,
  // e8 = y_e6 / y_e1 = m1m2k2, e9 = k2.
  code.edge_tables = {key, product, product, key, product, copy, copy, product, first};
  code.decoder = product;
  code.target = butterfly_product();
  return code;
}

snfc::Network relay_network() { return snfc::read_network_file(data_path("relay.net")); }
snfc::GfMatrix relay_target() { return snfc::read_matrix_file(data_path("relay_target.mat")); }
snfc::GfMatrix relay_upsilon() { return snfc::read_matrix_file(data_path("relay_security.mat")); }

snfc::LinearSecureCode relay_base_code() {
  const snfc::Network net = relay_network();
  const snfc::GfMatrix target = relay_target();
  const snfc::Field f = target.field();
  const snfc::CodeParameters params = snfc::make_parameters(3, 3, 1, 0);
  const std::vector<std::vector<snfc::Elem>> source_blocks{
      {2, 2, 1}, {0, 1, 0}, {1, 0, 0}, {0, 0, 1}, {2, 1, 2}, {1, 0, 0}, {0, 0, 2}, {0, 2, 0}, {2, 1, 1}};
  std::vector<snfc::GfMatrix> local;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    if (e < source_blocks.size()) {
      local.push_back(snfc::GfMatrix::column(f, source_blocks[e]));
    } else {
      const auto inputs = net.in_edges(net.edge(static_cast<snfc::EdgeId>(e)).tail).size();
      local.push_back(snfc::GfMatrix::column(f, std::vector<snfc::Elem>(inputs, 1)));
    }
  }
  // In(rho) = (e19, e20, e21); e21 carries t = 0, e20 t = 1, e19 t = 2.
  snfc::GfMatrix decoder(f, 3, 3);
  decoder(2, 0) = 1;
  decoder(1, 1) = 1;
  decoder(0, 2) = 1;
  return snfc::make_linear_code(net, target, params, std::move(local), std::move(decoder));
}

snfc::TransformMatrix relay_reference_transform() {
  const snfc::Field f = snfc::Field::make(3);
  return snfc::TransformMatrix::shared(snfc::GfMatrix::from_rows(f, {{1, 0, 0}, {0, 0, 1}, {2, 1, 2}}), 3);
}

std::vector<std::vector<snfc::Elem>> relay_reference_globals() {
  const std::vector<snfc::Elem> g10{0, 0, 1, 0, 1, 2, 0, 0, 0};
  const std::vector<snfc::Elem> g11{1, 0, 2, 0, 0, 0, 0, 2, 1};
  const std::vector<snfc::Elem> g12{0, 0, 0, 1, 0, 2, 0, 0, 2};
  return {
      {2, 1, 2, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0, 0, 0}, {1, 0, 2, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 1, 2, 0, 0, 0}, {0, 0, 0, 2, 2, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 2, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 2, 1}, {0, 0, 0, 0, 0, 0, 0, 0, 2}, {0, 0, 0, 0, 0, 0, 2, 1, 1},
      g10, g11, g12, g10, g10, g11, g11, g12, g12,
      {0, 1, 2, 0, 1, 2, 0, 2, 1}, {0, 0, 1, 0, 0, 1, 0, 0, 2}, {1, 0, 2, 1, 0, 2, 2, 0, 1},
  };
}

snfc::CodeParameters relay_secure_parameters() { return snfc::make_parameters(3, 3, 1, 1); }

}  // namespace fixtures
