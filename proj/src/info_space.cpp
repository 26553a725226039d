#include "fluidcat/info_space.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

namespace fluidcat {

double InfoSpace::dist(AtomId a, AtomId b) const {
  if (!has(a) || !has(b)) fail("UnknownAtom", "distance query outside the space");
  return dmat[static_cast<size_t>(a) * atoms.size() + b];
}

AtomId InfoSpace::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i)
    if (atoms[i] == id) return i;
  fail("UnknownAtom", "no atom named '" + id + "'");
}

const std::string& InfoSpace::name(AtomId a) const {
  if (!has(a)) fail("UnknownAtom", "atom index out of range");
  return atoms[a];
}

AtomSet InfoSpace::all_atoms() const {
  AtomSet s(atoms.size());
  for (int i = 0; i < size(); ++i) s[i] = i;
  return s;
}

namespace {

double number_at(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) fail("MalformedDocument", where + " is not a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) fail("MalformedDocument", where + " is not finite");
  return x;
}

std::vector<std::string> atom_list(const nlohmann::json& doc) {
  const auto& arr = doc.at("atoms");
  if (!arr.is_array() || arr.empty())
    fail("MalformedDocument", "atoms must be a non-empty array");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) fail("MalformedDocument", "atom ids must be strings");
    out.push_back(v.get<std::string>());
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i] == out[j]) fail("MalformedDocument", "duplicate atom id '" + out[i] + "'");
  return out;
}

void validate_metric(const InfoSpace& s) {
  int n = s.size();
  for (int i = 0; i < n; ++i) {
    if (s.dmat[static_cast<size_t>(i) * n + i] != 0.0)
      fail("NonzeroDiagonal", "d(" + s.atoms[i] + "," + s.atoms[i] + ") != 0");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double d = s.dmat[static_cast<size_t>(i) * n + j];
      if (d < 0.0)
        fail("NegativeDistance", "d(" + s.atoms[i] + "," + s.atoms[j] + ") < 0");
      if (d != s.dmat[static_cast<size_t>(j) * n + i])
        fail("AsymmetricMetric",
             "d(" + s.atoms[i] + "," + s.atoms[j] + ") != d(" + s.atoms[j] + "," + s.atoms[i] + ")");
    }
}

InfoSpace from_matrix(std::vector<std::string> atoms, const nlohmann::json& d) {
  if (!d.is_array()) fail("MalformedDocument", "metric.d must be an array of rows");
  size_t n = atoms.size();
  if (d.size() != n) fail("MalformedDocument", "metric.d row count does not match atoms");
  InfoSpace s;
  s.atoms = std::move(atoms);
  s.dmat.resize(n * n);
  for (size_t i = 0; i < n; ++i) {
    const auto& row = d[i];
    if (!row.is_array() || row.size() != n)
      fail("MalformedDocument", "metric.d row " + std::to_string(i) + " has wrong length");
    for (size_t j = 0; j < n; ++j)
      s.dmat[i * n + j] = number_at(row[j], "metric.d entry");
  }
  validate_metric(s);
  return s;
}

InfoSpace from_euclidean(const nlohmann::json& doc, const nlohmann::json& coords) {
  if (!coords.is_object() || coords.empty())
    fail("MalformedDocument", "metric.coords must be a non-empty object");
  std::vector<std::string> atoms;
  if (doc.contains("atoms")) {
    atoms = atom_list(doc);
    if (atoms.size() != coords.size())
      fail("MalformedDocument", "coords do not match the atoms list");
  } else {
    for (auto it = coords.begin(); it != coords.end(); ++it) atoms.push_back(it.key());
  }
  std::vector<std::vector<double>> pts;
  size_t dim = 0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (!coords.contains(atoms[i]))
      fail("MalformedDocument", "missing coordinates for atom '" + atoms[i] + "'");
    const auto& arr = coords.at(atoms[i]);
    if (!arr.is_array() || arr.empty())
      fail("MalformedDocument", "coordinates must be non-empty arrays");
    std::vector<double> p;
    for (const auto& v : arr) p.push_back(number_at(v, "coordinate"));
    if (i == 0)
      dim = p.size();
    else if (p.size() != dim)
      fail("MalformedDocument", "coordinate dimension mismatch for '" + atoms[i] + "'");
    pts.push_back(std::move(p));
  }
  size_t n = atoms.size();
  InfoSpace s;
  s.atoms = std::move(atoms);
  s.dmat.resize(n * n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (size_t k = 0; k < dim; ++k) {
        double t = pts[i][k] - pts[j][k];
        acc += t * t;
      }
      s.dmat[i * n + j] = std::sqrt(acc);
    }
  validate_metric(s);
  return s;
}

}  // namespace

InfoSpace load_space(const nlohmann::json& doc) {
  if (!doc.is_object()) fail("MalformedDocument", "space document must be an object");
  if (!doc.contains("metric") || !doc.at("metric").is_object())
    fail("MalformedDocument", "missing metric object");
  const auto& metric = doc.at("metric");
  if (!metric.contains("type") || !metric.at("type").is_string())
    fail("MalformedDocument", "metric.type must be a string");
  std::string type = metric.at("type").get<std::string>();
  if (type == "matrix") {
    if (!doc.contains("atoms")) fail("MalformedDocument", "matrix metric requires an atoms list");
    if (!metric.contains("d")) fail("MalformedDocument", "matrix metric requires d");
    return from_matrix(atom_list(doc), metric.at("d"));
  }
  if (type == "euclidean") {
    if (!metric.contains("coords")) fail("MalformedDocument", "euclidean metric requires coords");
    return from_euclidean(doc, metric.at("coords"));
  }
  fail("MalformedDocument", "unknown metric type '" + type + "'");
}

InfoSpace load_space_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail("MalformedDocument", "input is not valid JSON");
  return load_space(doc);
}

InfoSpace load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("MalformedDocument", "cannot open input file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_space_text(buf.str());
}

EpsGraph eps_graph(const InfoSpace& space, double epsilon) {
  if (!(epsilon > 0.0)) fail("NonpositiveEpsilon", "epsilon must be positive");
  EpsGraph g;
  g.epsilon = epsilon;
  g.n = space.size();
  g.adj.resize(space.size());
  for (int i = 0; i < space.size(); ++i)
    for (int j = i + 1; j < space.size(); ++j)
      if (space.dist(i, j) < epsilon) {
        g.edges.emplace_back(i, j);
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
  return g;
}

AtomSet ball(const InfoSpace& space, AtomId a, double epsilon) {
  if (!(epsilon > 0.0)) fail("NonpositiveEpsilon", "epsilon must be positive");
  if (!space.has(a)) fail("UnknownAtom", "ball center outside the space");
  AtomSet out;
  for (int b = 0; b < space.size(); ++b)
    if (b == a || space.dist(a, b) < epsilon) out.push_back(b);
  return out;
}

std::vector<AtomSet> components(const InfoSpace& space, double epsilon) {
  EpsGraph g = eps_graph(space, epsilon);
  std::vector<AtomSet> cells;
  std::vector<char> seen(space.size(), 0);
  for (int start = 0; start < space.size(); ++start) {
    if (seen[start]) continue;
    AtomSet cell;
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      cell.push_back(u);
      for (int v : g.adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
    }
    set_normalize(cell);
    cells.push_back(std::move(cell));
  }
  return cells;
}

int info_content(const InfoSpace& space, const AtomSet& s) {
  for (AtomId a : s)
    if (!space.has(a)) fail("UnknownAtom", "subset contains an atom outside the space");
  AtomSet t = s;
  set_normalize(t);
  if (t.size() != s.size()) fail("UnknownAtom", "subset contains duplicate atoms");
  return static_cast<int>(s.size());
}

}  // namespace fluidcat
