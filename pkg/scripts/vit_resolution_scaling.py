"""Check the quadratic-resolution assumption behind the ViT-G/14 estimate."""

from inference_energy.flops import ESTIMATES, VIT_G14_MEASURED, is_quadratic, resolution_exponent

TARGET = 5270.0


def main():
    (ra, fa), (rb, fb) = VIT_G14_MEASURED
    k = resolution_exponent(fa, fb, ra, rb)
    est = ESTIMATES["ViT-G/14"]
    quad = est.compute()
    fitted = est.base_gflops * (est.target_res / est.base_res) ** k
    print(f"measured exponent {k:.4f} (quadratic: {is_quadratic(k)})")
    print(f"quadratic rule  {quad:.1f} GFLOPs  ({(quad - TARGET) / TARGET:+.2%} vs {TARGET:g})")
    print(f"fitted exponent {fitted:.1f} GFLOPs  ({(fitted - TARGET) / TARGET:+.2%} vs {TARGET:g})")


if __name__ == "__main__":
    main()
