#include "hcwalk/topology.hpp"

#include <algorithm>
#include <sstream>

#include "hcwalk/errors.hpp"

namespace hcwalk {

int WalkTopology::central_dim() const {
  return kind == Kind::Concatenated ? dims.at(0) : d;
}

int WalkTopology::levels() const {
  return kind == Kind::Concatenated ? static_cast<int>(dims.size()) - 1 : 0;
}

void WalkTopology::validate() const {
  switch (kind) {
    case Kind::Bare:
      if (d < 1) throw ConfigError("bare: d must be >= 1");
      break;
    case Kind::Tails:
      if (d < 1) throw ConfigError("tails: d must be >= 1");
      if (n < 0 || q < 0) throw ConfigError("tails: n and q must be >= 0");
      break;
    case Kind::Concatenated:
      if (dims.empty()) throw ConfigError("concat: dims must be non-empty");
      for (int dk : dims)
        if (dk < 1) throw ConfigError("concat: every dimension must be >= 1");
      break;
  }
}

WalkTopology WalkTopology::canonical() const {
  validate();
  WalkTopology c;
  c.self_loops = self_loops;
  if (kind == Kind::Bare || (kind == Kind::Tails && (n == 0 || q == 0))) {
    c.kind = Kind::Bare;
    c.d = d;
  } else if (kind == Kind::Tails) {
    c.kind = Kind::Tails;
    c.d = d;
    c.n = n;
    c.q = q;
  } else if (dims.size() == 1) {
    // A single level has no attachments in either walk mode: both endpoints
    // lie on the central cube, antipodally.
    c.kind = Kind::Bare;
    c.d = dims[0];
  } else {
    c.kind = Kind::Concatenated;
    c.d = 0;
    c.dims = dims;
    c.mode = mode;
  }
  return c;
}

std::string WalkTopology::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Bare:
      os << "kind=bare d=" << d;
      break;
    case Kind::Tails:
      os << "kind=tails d=" << d << " n=" << n << " q=" << q;
      break;
    case Kind::Concatenated:
      os << "kind=concat dims=";
      for (std::size_t i = 0; i < dims.size(); ++i)
        os << (i ? "," : "") << dims[i];
      os << " mode="
         << (mode == WalkMode::PenetrateFull ? "penetrate" : "central");
      break;
  }
  os << " loops=" << (self_loops ? "true" : "false");
  return os.str();
}

namespace {

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    int r = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  }
}

}  // namespace

WalkTopology WalkTopology::parse(const std::string& text) {
  WalkTopology t;
  bool have_kind = false;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "kind") {
      have_kind = true;
      if (val == "bare")
        t.kind = Kind::Bare;
      else if (val == "tails")
        t.kind = Kind::Tails;
      else if (val == "concat")
        t.kind = Kind::Concatenated;
      else
        throw ConfigError("unknown kind '" + val + "'");
    } else if (key == "d") {
      t.d = parse_int(key, val);
    } else if (key == "n") {
      t.n = parse_int(key, val);
    } else if (key == "q") {
      t.q = parse_int(key, val);
    } else if (key == "dims") {
      t.dims.clear();
      std::string item;
      std::istringstream ds(val);
      while (std::getline(ds, item, ','))
        t.dims.push_back(parse_int(key, item));
      if (t.dims.empty()) throw ConfigError("dims is empty");
    } else if (key == "mode") {
      if (val == "central")
        t.mode = WalkMode::CentralCornerToCorner;
      else if (val == "penetrate")
        t.mode = WalkMode::PenetrateFull;
      else
        throw ConfigError("unknown mode '" + val + "'");
    } else if (key == "loops") {
      if (val == "true")
        t.self_loops = true;
      else if (val == "false")
        t.self_loops = false;
      else
        throw ConfigError("loops must be true or false, got '" + val + "'");
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw ConfigError("missing kind=");
  t.validate();
  return t;
}

int degree(const WalkTopology& t) {
  WalkTopology c = t.canonical();
  switch (c.kind) {
    case Kind::Bare:
      return c.d;
    case Kind::Tails:
      return c.d + c.n;
    case Kind::Concatenated: {
      int m = c.levels();
      int p = 0;
      for (int k = 0; k <= m; ++k)
        p = std::max(p, c.dims[k] + (k < m ? c.dims[k + 1] : 0));
      return p;
    }
  }
  return 0;
}

long long reduced_dimension(const WalkTopology& t) {
  WalkTopology c = t.canonical();
  switch (c.kind) {
    case Kind::Bare:
      return 2ll * c.d;
    case Kind::Tails:
      return static_cast<long long>(c.d) * (3ll * c.q + 2);
    case Kind::Concatenated: {
      int m = c.levels();
      if (c.mode == WalkMode::CentralCornerToCorner) {
        long long sum = 0, prod = 1;
        for (int k = 0; k <= m; ++k) {
          prod *= c.dims[k];
          sum += prod;
        }
        return 2 * sum + prod;
      }
      // Full penetration: per central weight class the attachment chain
      // contributes the central-style count over dims[1..m]; the deep
      // target keeps only its arrival states.
      long long sum = 0, prod = 1;
      for (int k = 1; k <= m; ++k) {
        prod *= c.dims[k];
        sum += prod;
      }
      return 2ll * c.dims[0] + (c.dims[0] + 1) * (2 * sum + prod) - 1;
    }
  }
  return 0;
}

BigInt attachment_edge_count(const std::vector<int>& dims, int p) {
  int m = static_cast<int>(dims.size()) - 1;
  if (p < 0 || p > m + 1)
    throw ConfigError("attachment level out of range");
  if (p == 0) {
    // One central cube's own endpoints plus a single subtree.
    return dims[0] * pow2(dims[0]) + attachment_edge_count(dims, 1);
  }
  BigInt f = 0;  // f(m+1) = 0
  for (int k = m; k >= p; --k)
    f = dims[k] * pow2(dims[k]) + (pow2(dims[k]) - 1) * f;
  return f;
}

BigInt structure_edge_sum(const std::vector<int>& dims) {
  BigInt central = dims[0] * pow2(dims[0]);
  if (dims.size() == 1) return central;
  return central + pow2(dims[0]) * attachment_edge_count(dims, 1);
}

Rational total_outgoing_edges(const WalkTopology& t, bool with_self_loops) {
  WalkTopology c = t.canonical();
  switch (c.kind) {
    case Kind::Bare:
      return 0;
    case Kind::Tails: {
      // Per tail, loop-free: the leg plus q-1 path edges, both ends -> 2q.
      // Loop padding adds p-2 per interior vertex and p-1 at the tip,
      // which telescopes to q(n+d)+1 per tail.
      if (!with_self_loops) return 2 * Rational(c.n) * c.q;
      return Rational(c.n) * (c.n * c.q + c.d * c.q + 1);
    }
    case Kind::Concatenated: {
      BigInt e = attachment_edge_count(c.dims, 1);
      if (with_self_loops) {
        int m = c.levels(), p = degree(c);
        BigInt orbit = 1;  // vertices per level in one subtree
        for (int k = 1; k <= m; ++k) {
          orbit *= pow2(c.dims[k]) - 1;
          int intrinsic = c.dims[k] + (k < m ? c.dims[k + 1] : 0);
          if (p > intrinsic) e += BigInt(p - intrinsic) * orbit;
        }
      }
      return Rational(e);
    }
  }
  return 0;
}

}  // namespace hcwalk
