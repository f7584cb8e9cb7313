"""Translation-pattern GSM constellations with exact metrics and a seeded
link-level Monte Carlo simulator."""

from .alphabets import (ALPHA, Alphabet, HalfComplex, cross_qam, energy,
                        make_alphabet, modified_square_qam, searched_alphabet,
                        square_qam, translate)
from .constellation import (ActivationPattern, ActivationSet, Constellation,
                            TranslationSet, build_ct, build_gsm, build_smx,
                            coding_gain, ct_gsm_gain_ratio, ct_power_formula,
                            default_activation_set, min_distance_sq, psi_a,
                            spectral_efficiency, translation_set)
from .codec import (MessageIndex, MLDetector, decode_bits, detect_ml,
                    encode_bits, encode_index, message_of,
                    pairwise_error_bound, point_index)
from .simulator import (SimConfig, SimResult, run_cer, snr_at_cer,
                        sweep_compare, results_to_csv, theoretical_gain_gap_db)
