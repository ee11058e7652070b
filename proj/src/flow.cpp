#include "elastica/flow.hpp"

#include <cmath>
#include <numbers>

namespace elastica {

namespace {

constexpr double kPi = std::numbers::pi;

using spectral::cvec;

double xi_of(int m, int n, double length) {
  return 2.0 * kPi * spectral::wave_index(m, n) / length;
}

// Nonlinear term in coefficient space: Nhat = -(1/2) * i xi * fft(k^3),
// optionally dealiased by the 2/3 rule; the zero mode vanishes identically.
cvec nonlinear(const cvec& vhat, int n, double length, bool dealias) {
  cvec k = spectral::ifft(vhat);
  for (auto& z : k) z = z * z * z;
  cvec chat = spectral::fft(k);
  for (int m = 0; m < n; ++m) {
    int w = spectral::wave_index(m, n);
    if (dealias && std::abs(w) > n / 3) {
      chat[m] = 0.0;
      continue;
    }
    if (n % 2 == 0 && m == n / 2) {
      chat[m] = 0.0;  // odd-order derivative: the Nyquist sign is ambiguous
      continue;
    }
    double xi = 2.0 * kPi * w / length;
    chat[m] *= std::complex<double>(0.0, -0.5 * xi);
  }
  return chat;
}

double parseval_energy(const cvec& vhat, double length) {
  double acc = 0.0;
  for (const auto& z : vhat) acc += std::norm(z);
  return acc * length / (4.0 * kPi);
}

LoopState rebuild(const cvec& vhat, const LoopState& proto) {
  int n = proto.n();
  cvec k = spectral::ifft(vhat);
  double mean_k = vhat[0].real();
  cvec km(n);
  for (int j = 0; j < n; ++j) km[j] = k[j].real() - mean_k;
  cvec prim = spectral::primitive(km, proto.length);
  LoopState st;
  st.length = proto.length;
  st.winding = proto.winding;
  st.basepoint = proto.basepoint;
  st.phi.resize(n);
  double phi0 = proto.phi[0];
  for (int j = 0; j < n; ++j)
    st.phi[j] =
        phi0 + mean_k * st.s(j) + prim[j].real() - prim[0].real();
  return st;
}

}  // namespace

Trajectory evolve_mkdv(const LoopState& state, const FlowParams& params) {
  validate(state);
  if (!(params.dt > 0.0))
    throw std::invalid_argument("evolve_mkdv: dt must be positive");
  if (params.steps < 0)
    throw std::invalid_argument("evolve_mkdv: steps must be >= 0");
  int n = state.n();
  double L = state.length;
  double dt = params.dt;

  if (params.scheme == Scheme::rk4_spectral) {
    double xi_max = kPi * n / L;
    double dt_max = 2.8 / (xi_max * xi_max * xi_max);
    if (dt > dt_max)
      throw StepTooLarge("evolve_mkdv: dt exceeds the rk4 dispersive bound " +
                         std::to_string(dt_max));
  }

  std::vector<double> kreal = curvature(state);
  cvec v = spectral::fft(cvec(kreal.begin(), kreal.end()));

  // Integrating-factor weights exp(Lambda dt / 2) with Lambda = i xi^3
  // (k_sss maps to (i xi)^3 = -i xi^3, negated by the equation's sign).
  cvec e_half(n), e_full(n);
  for (int m = 0; m < n; ++m) {
    double xi = xi_of(m, n, L);
    if (n % 2 == 0 && m == n / 2) xi = 0.0;
    std::complex<double> lam(0.0, xi * xi * xi);
    e_half[m] = std::exp(lam * (0.5 * dt));
    e_full[m] = e_half[m] * e_half[m];
  }

  auto nl = [&](const cvec& w) { return nonlinear(w, n, L, params.dealias); };

  Trajectory out;
  double e0 = parseval_energy(v, L);
  auto record = [&](int step, const cvec& w) {
    LoopState st = rebuild(w, state);
    FrameDiag d;
    d.t = step * dt;
    d.energy = energy(st);
    d.closure = closure_defect(st);
    d.winding = st.winding;
    out.frames.push_back(std::move(st));
    out.diagnostics.push_back(d);
  };
  record(0, v);

  for (int step = 1; step <= params.steps; ++step) {
    if (params.scheme == Scheme::integrating_factor) {
      cvec v1 = nl(v);
      cvec va(n), vb(n), vc(n);
      for (int m = 0; m < n; ++m) va[m] = e_half[m] * (v[m] + 0.5 * dt * v1[m]);
      cvec v2 = nl(va);
      for (int m = 0; m < n; ++m) vb[m] = e_half[m] * v[m] + 0.5 * dt * v2[m];
      cvec v3 = nl(vb);
      for (int m = 0; m < n; ++m)
        vc[m] = e_full[m] * v[m] + dt * e_half[m] * v3[m];
      cvec v4 = nl(vc);
      for (int m = 0; m < n; ++m)
        v[m] = e_full[m] * v[m] +
               (dt / 6.0) * (e_full[m] * v1[m] +
                             2.0 * e_half[m] * (v2[m] + v3[m]) + v4[m]);
    } else {
      // Plain RK4 on the full right-hand side Lambda v + N(v).
      auto rhs = [&](const cvec& w) {
        cvec r = nl(w);
        for (int m = 0; m < n; ++m) {
          double xi = xi_of(m, n, L);
          if (n % 2 == 0 && m == n / 2) xi = 0.0;
          r[m] += std::complex<double>(0.0, xi * xi * xi) * w[m];
        }
        return r;
      };
      cvec k1 = rhs(v);
      cvec w(n);
      for (int m = 0; m < n; ++m) w[m] = v[m] + 0.5 * dt * k1[m];
      cvec k2 = rhs(w);
      for (int m = 0; m < n; ++m) w[m] = v[m] + 0.5 * dt * k2[m];
      cvec k3 = rhs(w);
      for (int m = 0; m < n; ++m) w[m] = v[m] + dt * k3[m];
      cvec k4 = rhs(w);
      for (int m = 0; m < n; ++m)
        v[m] += (dt / 6.0) * (k1[m] + 2.0 * (k2[m] + k3[m]) + k4[m]);
    }

    if (params.dealias) {
      // Dealiased evolution lives on the 2/3 band by definition; modes above
      // it receive no nonlinear input, so zeroing them each step only stops
      // transform roundoff from accumulating where the dynamics never looks.
      for (int m = 0; m < n; ++m) {
        int w = spectral::wave_index(m, n);
        if (std::abs(w) > n / 3 || (n % 2 == 0 && m == n / 2)) v[m] = 0.0;
      }
    }

    double e = parseval_energy(v, L);
    if (!std::isfinite(e))
      throw Instability("evolve_mkdv: NaN/overflow at step " +
                        std::to_string(step));
    out.max_energy_drift = std::max(out.max_energy_drift, std::abs(e - e0));

    bool save = (params.save_every > 0 && step % params.save_every == 0) ||
                step == params.steps;
    if (save) record(step, v);
  }
  return out;
}

spectral::cvec miura_u(const LoopState& state) {
  std::vector<double> k = curvature(state);
  int n = state.n();
  cvec w(n);
  for (int j = 0; j < n; ++j) w[j] = 0.5 * k[j];
  cvec dw = spectral::derivative(w, 1, state.length);
  cvec u(n);
  for (int j = 0; j < n; ++j)
    u[j] = w[j] * w[j] + std::complex<double>(0.0, 1.0) * dw[j];
  return u;
}

double kdv_residual(const std::array<spectral::cvec, 5>& u, double dt,
                    double length) {
  int n = static_cast<int>(u[2].size());
  cvec us = spectral::derivative(u[2], 1, length);
  cvec usss = spectral::derivative(u[2], 3, length);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    std::complex<double> ut =
        (u[0][j] - 8.0 * u[1][j] + 8.0 * u[3][j] - u[4][j]) / (12.0 * dt);
    std::complex<double> r = ut + 6.0 * u[2][j] * us[j] + usss[j];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

PsiLift lift_psi(const LoopState& state) {
  validate(state);
  int n = state.n();
  double L = state.length;
  cvec p = periodic_part(state);

  // psi2 = i e^{-i phi/2} = e^{i rho s} q2 with rho = -pi w / L and
  // q2 = i e^{-i p / 2} periodic; derivatives act as e^{i rho s}(i rho + D).
  double rho = -kPi * state.winding / L;
  cvec q2(n);
  for (int j = 0; j < n; ++j)
    q2[j] = std::complex<double>(0.0, 1.0) *
            std::exp(std::complex<double>(0.0, -0.5 * p[j].real()));
  cvec dq2 = spectral::derivative(q2, 1, L);
  cvec d2q2 = spectral::derivative(q2, 2, L);

  PsiLift out;
  out.branch_ambiguous = (state.winding % 2 != 0);
  out.psi1.resize(n);
  out.psi2.resize(n);

  cvec g = gamma_samples(state);
  std::vector<double> k = curvature(state);
  cvec u = miura_u(state);

  double wdef = 0.0, res = 0.0;
  const std::complex<double> I(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    double s = state.s(j);
    std::complex<double> mod = std::exp(I * (rho * s));
    std::complex<double> psi2 = mod * q2[j];
    std::complex<double> dpsi2 = mod * (I * rho * q2[j] + dq2[j]);
    std::complex<double> d2psi2 =
        mod * (-rho * rho * q2[j] + 2.0 * I * rho * dq2[j] + d2q2[j]);

    std::complex<double> grel = g[j] - state.basepoint;
    std::complex<double> gp(std::cos(state.phi[j]), std::sin(state.phi[j]));
    std::complex<double> gpp = I * k[j] * gp;

    std::complex<double> psi1 = grel * psi2;
    std::complex<double> dpsi1 = gp * psi2 + grel * dpsi2;
    std::complex<double> d2psi1 = gpp * psi2 + 2.0 * gp * dpsi2 + grel * d2psi2;

    out.psi1[j] = psi1;
    out.psi2[j] = psi2;
    wdef = std::max(wdef, std::abs(psi1 * dpsi2 - psi2 * dpsi1 - 1.0));
    res = std::max(res, std::abs(d2psi2 + u[j] * psi2));
    res = std::max(res, std::abs(d2psi1 + u[j] * psi1));
  }
  out.wronskian_defect = wdef;
  out.ode_residual = res;
  return out;
}

}  // namespace elastica
