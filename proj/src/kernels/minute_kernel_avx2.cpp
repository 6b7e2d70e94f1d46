#include "cardioload/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cstring>
#include <limits>

#define CARDIOLOAD_AVX2 __attribute__((target("avx2,fma")))

namespace cardioload::kernels {

namespace {

// exp(x) for |x| <= 708: x = n*ln2 + r with |r| <= ln2/2, then a degree-13
// Taylor polynomial in r (truncation ~4e-18) scaled by 2^n.
CARDIOLOAD_AVX2 inline __m256d exp_pd(__m256d x)
{
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    x = _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(-708.0)), _mm256_set1_pd(708.0));
    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);                 // 1/13!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));    // 1/12!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));     // 1/11!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));      // 1/10!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    __m256i e = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
    e = _mm256_slli_epi64(_mm256_add_epi64(e, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(e));
}

CARDIOLOAD_AVX2 inline __m256d byte_mask(const std::uint8_t* bytes)
{
    std::int32_t packed = 0;
    std::memcpy(&packed, bytes, 4);
    const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    const __m256i is_zero = _mm256_cmpeq_epi64(wide, _mm256_setzero_si256());
    return _mm256_castsi256_pd(_mm256_xor_si256(is_zero, _mm256_set1_epi64x(-1)));
}

CARDIOLOAD_AVX2 void block4(const MinuteKernelParams& p, const double* hr_in, const std::uint8_t* moving_in,
                            const std::uint8_t* worn_in, double* pct_out, double* load_out, std::uint8_t* gate_out)
{
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);

    const __m256d hr = _mm256_loadu_pd(hr_in);
    const __m256d worn = byte_mask(worn_in);
    const __m256d moving = byte_mask(moving_in);
    const __m256d present = _mm256_cmp_pd(hr, hr, _CMP_ORD_Q);

    __m256d pct = _mm256_div_pd(_mm256_sub_pd(hr, _mm256_set1_pd(p.resting_hr)),
                                _mm256_set1_pd(p.heart_rate_reserve));
    pct = _mm256_min_pd(_mm256_max_pd(pct, zero), one);
    pct = _mm256_and_pd(pct, present);

    const __m256d below = _mm256_cmp_pd(pct, _mm256_set1_pd(p.hrr_floor), _CMP_LT_OQ);
    const __m256d in_band = _mm256_cmp_pd(pct, _mm256_set1_pd(p.band_end), _CMP_LT_OQ);
    const __m256d with_hr = _mm256_and_pd(worn, present);
    const __m256d active = _mm256_andnot_pd(below, _mm256_and_pd(with_hr, moving));

    __m256d gate = _mm256_blendv_pd(_mm256_set1_pd(kGateFull), _mm256_set1_pd(kGateDownweighted), in_band);
    gate = _mm256_blendv_pd(_mm256_set1_pd(kGateNoMovement), gate, moving);
    gate = _mm256_blendv_pd(gate, _mm256_set1_pd(kGateBelowFloor), below);
    gate = _mm256_blendv_pd(_mm256_set1_pd(kGateNoHr), gate, present);
    gate = _mm256_blendv_pd(_mm256_set1_pd(kGateNotWorn), gate, worn);

    const __m256d banister =
        _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(p.scale), pct), exp_pd(_mm256_mul_pd(_mm256_set1_pd(p.k), pct)));
    const __m256d factor = _mm256_blendv_pd(one, _mm256_set1_pd(p.downweight_factor), in_band);
    const __m256d load = _mm256_and_pd(_mm256_mul_pd(factor, banister), active);

    const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
    _mm256_storeu_pd(pct_out, _mm256_blendv_pd(nan, pct, with_hr));
    _mm256_storeu_pd(load_out, load);

    alignas(16) std::int32_t codes[4];
    _mm_store_si128(reinterpret_cast<__m128i*>(codes), _mm256_cvtpd_epi32(gate));
    for (int j = 0; j < 4; ++j) {
        gate_out[j] = static_cast<std::uint8_t>(codes[j]);
    }
}

} // namespace

void minute_loads_avx2(const MinuteKernelParams& p, MinuteColumns in, MinuteOutputs out)
{
    const std::size_t n = in.hr.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        block4(p, in.hr.data() + i, in.moving.data() + i, in.worn.data() + i, out.pct.data() + i,
               out.load.data() + i, out.gate.data() + i);
    }
    if (i < n) {
        // Pad the tail so every lane goes through the same vector arithmetic.
        double hr[4] = {0.0, 0.0, 0.0, 0.0};
        std::uint8_t moving[4] = {0, 0, 0, 0};
        std::uint8_t worn[4] = {0, 0, 0, 0};
        double pct[4];
        double load[4];
        std::uint8_t gate[4];
        const std::size_t rest = n - i;
        for (std::size_t j = 0; j < rest; ++j) {
            hr[j] = in.hr[i + j];
            moving[j] = in.moving[i + j];
            worn[j] = in.worn[i + j];
        }
        block4(p, hr, moving, worn, pct, load, gate);
        for (std::size_t j = 0; j < rest; ++j) {
            out.pct[i + j] = pct[j];
            out.load[i + j] = load[j];
            out.gate[i + j] = gate[j];
        }
    }
}

} // namespace cardioload::kernels

#endif
