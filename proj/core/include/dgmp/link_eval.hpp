// SPDX-License-Identifier: Apache-2.0
//
// dgmp-sim: compressive channel estimation simulator for wideband
// hybrid-precoded massive MIMO uplinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "dgmp/channel.hpp"
#include "dgmp/estimators.hpp"
#include "dgmp/rng.hpp"

namespace dgmp {

struct LinkDiagnostics {
  int loaded_subcarriers = 0; // subcarriers where ZF needed diagonal loading
};

/// Downlink spectral efficiency in bits per channel use with a two-stage
/// precoder built from the ESTIMATED angles: BS RF columns are the
/// conjugated estimated BS steering vectors (1/sqrt(N_bs) scaling), UE
/// combiners the conjugated estimated UE steering vectors, and baseband
/// zero-forcing on the K x K effective channel formed from the TRUE
/// channel (TDD-reciprocal transpose of the uplink), total transmit power
/// K. SINR keeps residual interference in the denominator; a singular
/// effective channel falls back to diagonal loading 1e-6 * trace and is
/// counted in the diagnostics.
double spectral_efficiency(const ChannelRealization& chan, const EstimateResult& result,
                           const SystemConfig& cfg, double snr_db,
                           LinkDiagnostics* diag = nullptr);

/// Uncoded Gray-mapped 16-QAM bit error rate through the same precoded
/// downlink (true channel, estimated precoders, AWGN at snr_db; +inf means
/// noiseless). n_bits must be a multiple of 4*K*P.
double ber_16qam(const ChannelRealization& chan, const EstimateResult& result,
                 const SystemConfig& cfg, double snr_db, long n_bits, Rng& rng);

} // namespace dgmp
