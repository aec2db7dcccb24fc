#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "oamswipt/channel.hpp"
#include "oamswipt/errors.hpp"

namespace oamswipt {

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Per-stream power split ratios: rho_l goes to information decoding, 1 - rho_l
// to energy harvesting.
template <typename Scalar>
using SplitVector = RealVector<Scalar>;

template <typename Scalar>
Scalar dbm_to_watts(Scalar dbm) {
    return std::pow(Scalar(10), (dbm - Scalar(30)) / Scalar(10));
}

template <typename Scalar>
Scalar watts_to_dbm(Scalar watts) {
    return Scalar(10) * std::log10(watts) + Scalar(30);
}

// Powers are spectral densities (W/Hz). With the default 1 Hz bandwidth they
// coincide with absolute powers.
template <typename Scalar = double>
struct LinkBudget {
    Scalar total_tx_power = 0;
    RealVector<Scalar> per_stream_power;
    Scalar channel_noise = 0;
    Scalar conversion_noise = 0;
    Scalar conversion_efficiency = 1;
    Scalar bandwidth = 1;

    static LinkBudget equal_split(Scalar total, Eigen::Index streams, Scalar noise, Scalar conv_noise,
                                  Scalar efficiency = 1, Scalar bandwidth = 1) {
        if (streams < 1) throw InvalidInput("link budget needs at least one stream");
        LinkBudget b{total, RealVector<Scalar>::Constant(streams, total / Scalar(streams)), noise, conv_noise, efficiency, bandwidth};
        b.validate();
        return b;
    }

    Eigen::Index stream_count() const { return per_stream_power.size(); }

    void validate() const {
        auto finite = [](Scalar v) { return std::isfinite(v); };
        if (!finite(total_tx_power) || !(total_tx_power > 0)) throw InvalidInput("total transmit power must be positive");
        if (!finite(channel_noise) || !(channel_noise > 0)) throw InvalidInput("channel noise must be positive");
        if (!finite(conversion_noise) || conversion_noise < 0) throw InvalidInput("conversion noise must be non-negative");
        if (!(conversion_efficiency > 0) || conversion_efficiency > 1) throw InvalidInput("conversion efficiency must lie in (0, 1]");
        if (!finite(bandwidth) || !(bandwidth > 0)) throw InvalidInput("bandwidth must be positive");
        if (per_stream_power.size() == 0) throw InvalidInput("link budget needs at least one stream");
        if ((per_stream_power.array() < 0).any() || !per_stream_power.allFinite())
            throw InvalidInput("per-stream powers must be non-negative");
        if (std::abs(per_stream_power.sum() - total_tx_power) > Scalar(1e-12) * total_tx_power)
            throw InvalidInput("per-stream powers must sum to the total transmit power");
    }
};

enum class Transceiver { Oam, MimoSvd, MimoZf, Siso };

inline std::string to_string(Transceiver kind) {
    switch (kind) {
    case Transceiver::Oam: return "oam";
    case Transceiver::MimoSvd: return "mimo-svd";
    case Transceiver::MimoZf: return "mimo-zf";
    case Transceiver::Siso: return "siso";
    }
    return "unknown";
}

template <typename Scalar = double>
struct REPoint {
    Scalar rate = 0;      // bits/s/Hz
    Scalar harvested = 0; // W/Hz

    friend bool operator==(const REPoint&, const REPoint&) = default;
};

// Unitary DFT matrix, F(m, l) = exp(j 2 pi m l / N) / sqrt(N). Column l is the
// UCA excitation of OAM mode l.
template <typename Scalar>
ComplexMatrix<Scalar> dft_matrix(Eigen::Index n) {
    ComplexMatrix<Scalar> f(n, n);
    const Scalar norm = Scalar(1) / std::sqrt(Scalar(n));
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index l = 0; l < n; ++l)
            f(m, l) = std::polar(norm, Scalar(2) * std::numbers::pi_v<Scalar> * Scalar((m * l) % n) / Scalar(n));
    return f;
}

template <typename Scalar = double>
struct ModeChannel {
    ComplexMatrix<Scalar> effective_gains;
    Transceiver kind = Transceiver::Oam;
};

// OAM: G = F^H H F. MIMO-SVD: G = U^H H V = diag(singular values, descending).
// MIMO-ZF and SISO operate in the antenna domain, so G = H.
template <typename Scalar>
ModeChannel<Scalar> make_mode_channel(const ChannelMatrix<Scalar>& h, Transceiver kind) {
    const auto& e = h.entries;
    switch (kind) {
    case Transceiver::Oam: {
        if (e.rows() != e.cols()) throw InvalidInput("OAM mode channel needs equal transmit and receive element counts");
        const ComplexMatrix<Scalar> f = dft_matrix<Scalar>(e.rows());
        return {f.adjoint() * e * f, kind};
    }
    case Transceiver::MimoSvd: {
        Eigen::JacobiSVD<ComplexMatrix<Scalar>> svd(e);
        ComplexMatrix<Scalar> g = ComplexMatrix<Scalar>::Zero(svd.singularValues().size(), svd.singularValues().size());
        g.diagonal() = svd.singularValues().template cast<std::complex<Scalar>>();
        return {std::move(g), kind};
    }
    case Transceiver::MimoZf:
    case Transceiver::Siso: return {e, kind};
    }
    throw InvalidInput("unknown transceiver kind");
}

// sum_{n,k} p_k |H_nk|^2 for either an antenna-domain or a mode-domain matrix.
template <typename Scalar>
Scalar received_signal_power(const ComplexMatrix<Scalar>& g, const RealVector<Scalar>& stream_power) {
    if (g.cols() != stream_power.size()) throw InvalidInput("stream power count does not match channel columns");
    return (g.cwiseAbs2() * stream_power).sum();
}

// Per-stream dynamic power splitting. Stream l carries desired power
// signal(l) plus interference(l) from the other streams; the split ratio only
// scales what reaches the decoder, so the streams couple only through the
// fixed interference terms.
//
//   rate      = sum_l log2(1 + rho_l s_l / (rho_l (i_l + sigma^2) + sigma_cov^2))
//   harvested = zeta sum_l (1 - rho_l) (s_l + i_l + sigma^2)
template <typename Scalar = double>
struct StreamSet {
    RealVector<Scalar> signal;
    RealVector<Scalar> interference;
    Scalar channel_noise = 0;
    Scalar conversion_noise = 0;
    Scalar conversion_efficiency = 1;

    Eigen::Index size() const { return signal.size(); }

    bool separable() const { return (interference.array() == Scalar(0)).all(); }

    Scalar stream_rate(Eigen::Index l, Scalar rho) const {
        if (rho <= 0) return Scalar(0);
        const Scalar sinr = rho * signal(l) / (rho * (interference(l) + channel_noise) + conversion_noise);
        return std::log1p(sinr) / std::numbers::ln2_v<Scalar>;
    }

    Scalar stream_harvested(Eigen::Index l, Scalar rho) const {
        return conversion_efficiency * (Scalar(1) - rho) * (signal(l) + interference(l) + channel_noise);
    }

    // Harvested power at rho = 0, accumulated exactly as evaluate() does.
    Scalar max_harvested() const {
        Scalar total = 0;
        for (Eigen::Index l = 0; l < size(); ++l) total += stream_harvested(l, Scalar(0));
        return total;
    }

    REPoint<Scalar> evaluate(const Eigen::Ref<const RealVector<Scalar>>& rho) const {
        if (rho.size() != size()) throw InvalidInput("split vector length does not match stream count");
        REPoint<Scalar> out;
        for (Eigen::Index l = 0; l < size(); ++l) {
            const Scalar r = rho(l);
            if (!(r >= 0 && r <= 1)) throw InvalidInput("split ratios must lie in [0, 1]");
            out.rate += stream_rate(l, r);
            out.harvested += stream_harvested(l, r);
        }
        return out;
    }
};

template <typename Scalar>
StreamSet<Scalar> oam_streams(const ModeChannel<Scalar>& mc, const LinkBudget<Scalar>& budget) {
    budget.validate();
    const auto& g = mc.effective_gains;
    if (g.rows() != g.cols() || g.cols() != budget.stream_count())
        throw InvalidInput("mode channel dimensions do not match the link budget");
    const Eigen::Index n = g.rows();
    StreamSet<Scalar> s{RealVector<Scalar>(n), RealVector<Scalar>(n), budget.channel_noise, budget.conversion_noise,
                        budget.conversion_efficiency};
    for (Eigen::Index l = 0; l < n; ++l) {
        s.signal(l) = budget.per_stream_power(l) * std::norm(g(l, l));
        Scalar leak = 0;
        for (Eigen::Index k = 0; k < n; ++k)
            if (k != l) leak += budget.per_stream_power(k) * std::norm(g(l, k));
        s.interference(l) = leak;
    }
    return s;
}

// Aligned arrays: the circulant channel is diagonalized exactly by the DFT, so
// the streams are built from its eigenvalues with no interference terms.
// Throws StructureViolation when H is not circulant.
template <typename Scalar>
StreamSet<Scalar> aligned_oam_streams(const ChannelMatrix<Scalar>& h, const LinkBudget<Scalar>& budget) {
    budget.validate();
    const ComplexVector<Scalar> gains = circulant_mode_gains(h);
    if (gains.size() != budget.stream_count()) throw InvalidInput("mode count does not match the link budget");
    return {budget.per_stream_power.cwiseProduct(gains.cwiseAbs2()), RealVector<Scalar>::Zero(gains.size()), budget.channel_noise,
            budget.conversion_noise, budget.conversion_efficiency};
}

template <typename Scalar>
StreamSet<Scalar> mimo_svd_streams(const ChannelMatrix<Scalar>& h, const LinkBudget<Scalar>& budget) {
    budget.validate();
    Eigen::JacobiSVD<ComplexMatrix<Scalar>> svd(h.entries);
    const RealVector<Scalar>& sv = svd.singularValues();
    if (sv.size() != budget.stream_count()) throw InvalidInput("sub-channel count does not match the link budget");
    StreamSet<Scalar> s{budget.per_stream_power.cwiseProduct(sv.cwiseAbs2()), RealVector<Scalar>::Zero(sv.size()),
                        budget.channel_noise, budget.conversion_noise, budget.conversion_efficiency};
    return s;
}

// Single stream carrying the full transmit power.
template <typename Scalar>
StreamSet<Scalar> siso_streams(std::complex<Scalar> h, const LinkBudget<Scalar>& budget) {
    budget.validate();
    RealVector<Scalar> signal(1);
    signal(0) = budget.total_tx_power * std::norm(h);
    return {signal, RealVector<Scalar>::Zero(1), budget.channel_noise, budget.conversion_noise, budget.conversion_efficiency};
}

template <typename Scalar>
REPoint<Scalar> oam_rate_energy(const ModeChannel<Scalar>& mc, const LinkBudget<Scalar>& budget, const SplitVector<Scalar>& rho) {
    return oam_streams(mc, budget).evaluate(rho);
}

template <typename Scalar>
REPoint<Scalar> mimo_svd_rate_energy(const ChannelMatrix<Scalar>& h, const LinkBudget<Scalar>& budget, const SplitVector<Scalar>& rho) {
    return mimo_svd_streams(h, budget).evaluate(rho);
}

template <typename Scalar>
REPoint<Scalar> siso_rate_energy(std::complex<Scalar> h, const LinkBudget<Scalar>& budget, Scalar rho) {
    RealVector<Scalar> r(1);
    r(0) = rho;
    return siso_streams(h, budget).evaluate(r);
}

// Open-loop spatial multiplexing with a zero-forcing receiver. One split ratio
// is shared by every receive antenna (the split happens before baseband).
template <typename Scalar = double>
struct ZeroForcingModel {
    RealVector<Scalar> noise_amplification; // beta_k = [(H^H H)^-1]_kk
    RealVector<Scalar> stream_power;
    Scalar received_power = 0;              // sum_{n,k} p_k |H_nk|^2
    Eigen::Index receive_count = 0;
    Scalar channel_noise = 0;
    Scalar conversion_noise = 0;
    Scalar conversion_efficiency = 1;
    Scalar condition = 0;

    REPoint<Scalar> evaluate(Scalar rho) const {
        if (!(rho >= 0 && rho <= 1)) throw InvalidInput("split ratio must lie in [0, 1]");
        REPoint<Scalar> out;
        if (rho > 0) {
            const Scalar noise = rho * channel_noise + conversion_noise;
            for (Eigen::Index k = 0; k < stream_power.size(); ++k)
                out.rate += std::log1p(rho * stream_power(k) / (noise * noise_amplification(k))) / std::numbers::ln2_v<Scalar>;
        }
        out.harvested = conversion_efficiency * (Scalar(1) - rho) * (received_power + Scalar(receive_count) * channel_noise);
        return out;
    }
};

template <typename Scalar>
ZeroForcingModel<Scalar> zero_forcing_model(const ChannelMatrix<Scalar>& h, const LinkBudget<Scalar>& budget) {
    budget.validate();
    const auto& e = h.entries;
    if (e.cols() != budget.stream_count()) throw InvalidInput("transmit element count does not match the link budget");
    if (e.rows() < e.cols()) throw IllConditionedChannel("zero forcing needs at least as many receive as transmit elements",
                                                           std::numeric_limits<double>::infinity());
    Eigen::JacobiSVD<ComplexMatrix<Scalar>> svd(e, Eigen::ComputeThinV);
    const RealVector<Scalar>& sv = svd.singularValues();
    const Scalar smax = sv(0);
    const Scalar smin = sv(sv.size() - 1);
    const Scalar cond = smin > 0 ? smax / smin : std::numeric_limits<Scalar>::infinity();
    if (!(smin > 0) || !(cond < Scalar(1) / std::numeric_limits<Scalar>::epsilon()))
        throw IllConditionedChannel("channel is singular to working precision", double(cond));

    ZeroForcingModel<Scalar> zf;
    const auto& v = svd.matrixV();
    zf.noise_amplification = (v.cwiseAbs2() * sv.cwiseAbs2().cwiseInverse());
    zf.stream_power = budget.per_stream_power;
    zf.received_power = received_signal_power<Scalar>(e, budget.per_stream_power);
    zf.receive_count = e.rows();
    zf.channel_noise = budget.channel_noise;
    zf.conversion_noise = budget.conversion_noise;
    zf.conversion_efficiency = budget.conversion_efficiency;
    zf.condition = cond;
    return zf;
}

template <typename Scalar>
REPoint<Scalar> mimo_zf_rate_energy(const ChannelMatrix<Scalar>& h, const LinkBudget<Scalar>& budget, Scalar rho) {
    return zero_forcing_model(h, budget).evaluate(rho);
}

} // namespace oamswipt
