#include "qsppoly/target.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsppoly/errors.hpp"

namespace qsppoly {

namespace {
const char* const kBuiltins[] = {"identity", "square", "scaled_bump", "half_sine", "zero",
                                 "theta_step"};
}

TargetFunction TargetFunction::builtin(const std::string& name, double param) {
  if (std::find(std::begin(kBuiltins), std::end(kBuiltins), name) == std::end(kBuiltins)) {
    throw Error(ErrorCode::InvalidArgument, "unknown builtin target '" + name + "'");
  }
  TargetFunction f;
  f.kind_ = Kind::Builtin;
  f.name_ = name;
  f.param_ = param;
  if (name == "scaled_bump" && param == 0.0) f.param_ = 1.0;
  if (name == "theta_step" && !(f.param_ > 0 && f.param_ < 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "theta_step needs eps in (0, 1/2)");
  }
  return f;
}

TargetFunction TargetFunction::parse_builtin(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return builtin(spec);
  double param = 0.0;
  try {
    param = std::stod(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad target parameter in '" + spec + "'");
  }
  return builtin(spec.substr(0, colon), param);
}

TargetFunction TargetFunction::table(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "table needs matching xs/ys with at least 2 knots");
  }
  if (xs.front() != 0.0 || xs.back() != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "table knots must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "table knots must be strictly increasing");
    }
  }
  TargetFunction f;
  f.kind_ = Kind::Table;
  f.name_ = "table";
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  return f;
}

TargetFunction TargetFunction::polynomial(Poly p) {
  TargetFunction f;
  f.kind_ = Kind::PolyTarget;
  f.name_ = "poly";
  f.poly_ = std::move(p);
  return f;
}

TargetFunction TargetFunction::callable(std::string name, std::function<double(double)> fn) {
  if (!fn) throw Error(ErrorCode::InvalidArgument, "empty callable target");
  TargetFunction f;
  f.kind_ = Kind::Callable;
  f.name_ = std::move(name);
  f.fn_ = std::move(fn);
  return f;
}

bool TargetFunction::is_continuous() const noexcept {
  return !(kind_ == Kind::Builtin && name_ == "theta_step");
}

bool TargetFunction::is_identically_zero() const {
  switch (kind_) {
    case Kind::Builtin:
      return name_ == "zero" || (name_ == "scaled_bump" && param_ == 0.0);
    case Kind::Table:
      return std::all_of(ys_.begin(), ys_.end(), [](double y) { return y == 0.0; });
    case Kind::PolyTarget:
      return poly_.is_zero();
    case Kind::Callable:
      return false;
  }
  return false;
}

double TargetFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::Builtin:
      if (name_ == "identity") return x;
      if (name_ == "square") return x * x;
      if (name_ == "scaled_bump") return param_ * x * (1 - x);
      if (name_ == "half_sine") return std::sin(std::numbers::pi * x / 2);
      if (name_ == "zero") return 0.0;
      return x < 0.5 ? 0.0 : (x > 0.5 ? 1.0 : 0.5);  // theta_step
    case Kind::Table: {
      if (x <= xs_.front()) return ys_.front();
      if (x >= xs_.back()) return ys_.back();
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
    }
    case Kind::PolyTarget:
      return poly_(x);
    case Kind::Callable:
      return fn_(x);
  }
  return 0.0;
}

}  // namespace qsppoly
