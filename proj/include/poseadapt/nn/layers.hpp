// Copyright 2026 The poseadapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "poseadapt/nn/tensor.hpp"

namespace poseadapt::nn {

template <typename T>
using EMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;  // column-major
template <typename T>
using EMap = Eigen::Map<EMat<T>>;
template <typename T>
using ECMap = Eigen::Map<const EMat<T>>;
template <typename T>
using EVMap = Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>;
template <typename T>
using ECVMap = Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>;

template <typename T>
struct Param {
  std::vector<T> val;
  std::vector<int> shape;
  std::size_t size() const { return val.size(); }
  void init(std::vector<int> s) {
    shape = std::move(s);
    std::size_t n = 1;
    for (int d : shape) n *= d;
    val.assign(n, T(0));
  }
};

template <typename T>
void he_normal_init(Param<T>& p, int fan_in, std::mt19937_64& rng, double gain = 1.0) {
  std::normal_distribution<double> dist(0.0, gain * std::sqrt(2.0 / fan_in));
  for (auto& v : p.val) v = static_cast<T>(dist(rng));
}

// Strided 2-D convolution with zero padding. Weights are stored flat as a
// column-major [cin*k*k x cout] matrix; a row index kk decodes to
// (ci, ky, kx) with kx fastest. im2col buffers are rebuilt in backward
// instead of cached: the gathers are cheap next to the GEMMs.
template <typename T>
struct Conv2d {
  int cin = 0, cout = 0, k = 1, stride = 1, pad = 0;
  Param<T> w, b;

  void init(int cin_, int cout_, int k_, int stride_, int pad_, std::mt19937_64& rng,
            double gain = 1.0) {
    cin = cin_;
    cout = cout_;
    k = k_;
    stride = stride_;
    pad = pad_;
    w.init({cin * k * k, cout});
    b.init({cout});
    he_normal_init(w, cin * k * k, rng, gain);
  }

  int out_extent(int in) const { return (in + 2 * pad - k) / stride + 1; }

  void im2col(const Tensor<T>& x, std::vector<T>& cols, int hout, int wout) const {
    const int kk = cin * k * k;
    cols.assign(std::size_t(kk) * hout * wout, T(0));
    const int plane = x.plane();
    for (int oy = 0; oy < hout; ++oy) {
      for (int ox = 0; ox < wout; ++ox) {
        T* col = cols.data() + std::size_t(oy * wout + ox) * kk;
        for (int ci = 0; ci < cin; ++ci) {
          const T* xp = x.data() + std::size_t(ci) * plane;
          for (int ky = 0; ky < k; ++ky) {
            const int iy = oy * stride - pad + ky;
            if (iy < 0 || iy >= x.h) {
              col += k;
              continue;
            }
            for (int kx = 0; kx < k; ++kx) {
              const int ix = ox * stride - pad + kx;
              *col++ = (ix >= 0 && ix < x.w) ? xp[iy * x.w + ix] : T(0);
            }
          }
        }
      }
    }
  }

  Tensor<T> forward(const Tensor<T>& x) const {
    const int hout = out_extent(x.h), wout = out_extent(x.w);
    Tensor<T> y(cout, hout, wout);
    const int n = hout * wout;
    ECMap<T> wm(w.val.data(), cin * k * k, cout);
    EMap<T> ym(y.data(), n, cout);
    if (k == 1 && stride == 1 && pad == 0) {
      ECMap<T> xm(x.data(), n, cin);
      ym.noalias() = xm * wm;
    } else {
      std::vector<T> cols;
      im2col(x, cols, hout, wout);
      ECMap<T> cm(cols.data(), cin * k * k, n);
      ym.noalias() = cm.transpose() * wm;
    }
    for (int co = 0; co < cout; ++co) ym.col(co).array() += b.val[co];
    return y;
  }

  // Accumulates weight/bias grads into gw/gb (laid out like w/b) and returns
  // the grad w.r.t. the input.
  Tensor<T> backward(const Tensor<T>& x, const Tensor<T>& gy, T* gw, T* gb) const {
    const int hout = gy.h, wout = gy.w, n = hout * wout;
    const int kk = cin * k * k;
    ECMap<T> wm(w.val.data(), kk, cout);
    ECMap<T> gym(gy.data(), n, cout);
    EMap<T> gwm(gw, kk, cout);
    for (int co = 0; co < cout; ++co) gb[co] += gym.col(co).sum();

    Tensor<T> gx(cin, x.h, x.w);
    if (k == 1 && stride == 1 && pad == 0) {
      ECMap<T> xm(x.data(), n, cin);
      gwm.noalias() += xm.transpose() * gym;
      EMap<T> gxm(gx.data(), n, cin);
      gxm.noalias() = gym * wm.transpose();
      return gx;
    }
    std::vector<T> cols;
    im2col(x, cols, hout, wout);
    ECMap<T> cm(cols.data(), kk, n);
    gwm.noalias() += cm * gym;

    std::vector<T> gcols(std::size_t(kk) * n);
    EMap<T> gcm(gcols.data(), kk, n);
    gcm.noalias() = wm * gym.transpose();
    // col2im scatter-add
    const int plane = x.plane();
    for (int oy = 0; oy < hout; ++oy) {
      for (int ox = 0; ox < wout; ++ox) {
        const T* col = gcols.data() + std::size_t(oy * wout + ox) * kk;
        for (int ci = 0; ci < cin; ++ci) {
          T* xp = gx.data() + std::size_t(ci) * plane;
          for (int ky = 0; ky < k; ++ky) {
            const int iy = oy * stride - pad + ky;
            if (iy < 0 || iy >= x.h) {
              col += k;
              continue;
            }
            for (int kx = 0; kx < k; ++kx) {
              const int ix = ox * stride - pad + kx;
              if (ix >= 0 && ix < x.w) xp[iy * x.w + ix] += *col;
              ++col;
            }
          }
        }
      }
    }
    return gx;
  }
};

// Transposed convolution (fractionally-strided). Weights are stored flat as
// a column-major [cin x cout*k*k] matrix; a column index m decodes to
// (co, ky, kx) with kx fastest. Output extent is stride * input extent for
// k = 2*stride and pad = stride/2 (the k=4, s=2, p=1 doubling stage).
template <typename T>
struct Deconv2d {
  int cin = 0, cout = 0, k = 4, stride = 2, pad = 1;
  Param<T> w, b;

  void init(int cin_, int cout_, int k_, int stride_, int pad_, std::mt19937_64& rng,
            double gain = 1.0) {
    cin = cin_;
    cout = cout_;
    k = k_;
    stride = stride_;
    pad = pad_;
    w.init({cin, cout * k * k});
    b.init({cout});
    he_normal_init(w, cin * k * k / (stride * stride), rng, gain);
  }

  int out_extent(int in) const { return (in - 1) * stride - 2 * pad + k; }

  Tensor<T> forward(const Tensor<T>& x) const {
    const int hout = out_extent(x.h), wout = out_extent(x.w);
    const int nin = x.plane(), m = cout * k * k;
    Tensor<T> y(cout, hout, wout);
    ECMap<T> xm(x.data(), nin, cin);
    ECMap<T> wm(w.val.data(), cin, m);
    std::vector<T> d(std::size_t(nin) * m);
    EMap<T> dm(d.data(), nin, m);
    dm.noalias() = xm * wm;

    for (int co = 0; co < cout; ++co) {
      T* yp = y.data() + std::size_t(co) * y.plane();
      for (int ky = 0; ky < k; ++ky) {
        for (int kx = 0; kx < k; ++kx) {
          const T* dc = d.data() + std::size_t((co * k + ky) * k + kx) * nin;
          for (int iy = 0; iy < x.h; ++iy) {
            const int oy = iy * stride - pad + ky;
            if (oy < 0 || oy >= hout) continue;
            for (int ix = 0; ix < x.w; ++ix) {
              const int ox = ix * stride - pad + kx;
              if (ox >= 0 && ox < wout) yp[oy * wout + ox] += dc[iy * x.w + ix];
            }
          }
        }
      }
      for (int i = 0; i < y.plane(); ++i) yp[i] += b.val[co];
    }
    return y;
  }

  Tensor<T> backward(const Tensor<T>& x, const Tensor<T>& gy, T* gw, T* gb) const {
    const int hout = gy.h, wout = gy.w;
    const int nin = x.plane(), m = cout * k * k;
    for (int co = 0; co < cout; ++co) {
      const T* gp = gy.data() + std::size_t(co) * gy.plane();
      T s = T(0);
      for (int i = 0; i < gy.plane(); ++i) s += gp[i];
      gb[co] += s;
    }
    // gather grad into the [nin x m] layout used by forward
    std::vector<T> gd(std::size_t(nin) * m, T(0));
    for (int co = 0; co < cout; ++co) {
      const T* gp = gy.data() + std::size_t(co) * gy.plane();
      for (int ky = 0; ky < k; ++ky) {
        for (int kx = 0; kx < k; ++kx) {
          T* gdc = gd.data() + std::size_t((co * k + ky) * k + kx) * nin;
          for (int iy = 0; iy < x.h; ++iy) {
            const int oy = iy * stride - pad + ky;
            if (oy < 0 || oy >= hout) continue;
            for (int ix = 0; ix < x.w; ++ix) {
              const int ox = ix * stride - pad + kx;
              if (ox >= 0 && ox < wout) gdc[iy * x.w + ix] = gp[oy * wout + ox];
            }
          }
        }
      }
    }
    ECMap<T> xm(x.data(), nin, cin);
    ECMap<T> wm(w.val.data(), cin, m);
    ECMap<T> gdm(gd.data(), nin, m);
    EMap<T> gwm(gw, cin, m);
    gwm.noalias() += xm.transpose() * gdm;
    Tensor<T> gx(cin, x.h, x.w);
    EMap<T> gxm(gx.data(), nin, cin);
    gxm.noalias() = gdm * wm.transpose();
    return gx;
  }
};

// Fully connected layer on flat vectors; weight is column-major [in x out].
template <typename T>
struct Linear {
  int in = 0, out = 0;
  Param<T> w, b;

  void init(int in_, int out_, std::mt19937_64& rng, double gain = 1.0) {
    in = in_;
    out = out_;
    w.init({in, out});
    b.init({out});
    he_normal_init(w, in, rng, gain);
  }

  std::vector<T> forward(const std::vector<T>& x) const {
    std::vector<T> y(out);
    ECMap<T> wm(w.val.data(), in, out);
    ECVMap<T> xv(x.data(), in);
    EVMap<T> yv(y.data(), out);
    yv.noalias() = wm.transpose() * xv;
    for (int o = 0; o < out; ++o) y[o] += b.val[o];
    return y;
  }

  std::vector<T> backward(const std::vector<T>& x, const std::vector<T>& gy, T* gw,
                          T* gb) const {
    ECMap<T> wm(w.val.data(), in, out);
    ECVMap<T> xv(x.data(), in);
    ECVMap<T> gyv(gy.data(), out);
    EMap<T> gwm(gw, in, out);
    gwm.noalias() += xv * gyv.transpose();
    for (int o = 0; o < out; ++o) gb[o] += gy[o];
    std::vector<T> gx(in);
    EVMap<T> gxv(gx.data(), in);
    gxv.noalias() = wm * gyv;
    return gx;
  }
};

}  // namespace poseadapt::nn
