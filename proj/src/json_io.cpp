#include "pqs/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pqs {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::parse, "malformed JSON");
  return j;
}

json matrix_node(const Mat& m, const SystemLayout& layout, double tol) {
  json j;
  j["dims"] = layout.dims;
  j["labels"] = layout.labels;
  j["tol"] = tol;
  json data = json::array();
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      data.push_back({m(r, c).real(), m(r, c).imag()});
  j["data"] = std::move(data);
  return j;
}

DensityMatrix matrix_from_node(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("labels") ||
      !j.contains("tol") || !j.contains("data"))
    fail(ErrorCode::parse, "matrix object needs dims, labels, tol, data");

  SystemLayout layout;
  try {
    layout.dims = j.at("dims").get<std::vector<long>>();
    layout.labels = j.at("labels").get<std::vector<std::string>>();
  } catch (const json::exception&) {
    fail(ErrorCode::parse, "dims or labels have the wrong type");
  }
  layout.validate();

  if (!j.at("tol").is_number()) fail(ErrorCode::parse, "tol must be a number");
  double tol = j.at("tol").get<double>();

  long n = layout.total_dim();
  const json& data = j.at("data");
  if (!data.is_array() || static_cast<long>(data.size()) != n * n)
    fail(ErrorCode::parse, "data length does not match dims");

  Mat m(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) {
      const json& e = data[r * n + c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        fail(ErrorCode::parse, "entries must be [re, im] pairs");
      m(r, c) = cx(e[0].get<double>(), e[1].get<double>());
    }
  return {m, layout, tol};
}

}  // namespace

std::string matrix_to_json(const DensityMatrix& dm) {
  return matrix_node(dm.m, dm.layout, dm.tol).dump();
}

DensityMatrix matrix_from_json(const std::string& text) {
  return matrix_from_node(parse(text));
}

std::string ccq_to_json(const CcqEnsemble& c) {
  c.validate();
  if (c.dA != c.dB)
    fail(ErrorCode::invalid_arg, "serialization covers square keys only");
  json j;
  j["d"] = c.dA;
  json p = json::array();
  json eve = json::array();
  SystemLayout env = SystemLayout::single(std::max(c.eve_dim(), 1L), "E");
  for (long i = 0; i < c.dA; ++i)
    for (long jj = 0; jj < c.dB; ++jj) {
      p.push_back({i, jj, c.p(i, jj)});
      if (c.has_eve(i, jj))
        eve.push_back({i, jj, matrix_node(c.eve_at(i, jj), env, c.tol)});
    }
  j["p"] = std::move(p);
  j["eve"] = std::move(eve);
  return j.dump();
}

CcqEnsemble ccq_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_object() || !j.contains("d") || !j.contains("p") ||
      !j.contains("eve"))
    fail(ErrorCode::parse, "ensemble object needs d, p, eve");
  if (!j.at("d").is_number_integer())
    fail(ErrorCode::parse, "d must be an integer");

  CcqEnsemble c;
  c.dA = j.at("d").get<long>();
  c.dB = c.dA;
  if (c.dA < 1) fail(ErrorCode::parse, "d must be positive");
  c.p = Eigen::MatrixXd::Zero(c.dA, c.dB);
  c.eve.assign(c.dA * c.dB, Mat());

  const json& p = j.at("p");
  if (!p.is_array()) fail(ErrorCode::parse, "p must be an array of triplets");
  for (const json& e : p) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number())
      fail(ErrorCode::parse, "p entries must be [i, j, value]");
    long i = e[0].get<long>(), jj = e[1].get<long>();
    if (i < 0 || i >= c.dA || jj < 0 || jj >= c.dB)
      fail(ErrorCode::parse, "p index out of range");
    c.p(i, jj) = e[2].get<double>();
  }

  const json& eve = j.at("eve");
  if (!eve.is_array()) fail(ErrorCode::parse, "eve must be an array");
  for (const json& e : eve) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      fail(ErrorCode::parse, "eve entries must be [i, j, matrix]");
    long i = e[0].get<long>(), jj = e[1].get<long>();
    if (i < 0 || i >= c.dA || jj < 0 || jj >= c.dB)
      fail(ErrorCode::parse, "eve index out of range");
    c.eve[i * c.dB + jj] = matrix_from_node(e[2]).m;
  }

  c.validate();
  return c;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) fail(ErrorCode::io, "read failed on " + path);
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) fail(ErrorCode::io, "write failed on " + path);
}

}  // namespace pqs
