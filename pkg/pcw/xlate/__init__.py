"""
Proof translations between calculi
"""

from .bi import bunch_reconstruct, bunch_to_labels, lbi_to_gbi
from .cond import igv_to_glv
from .il import eliminate_ref_tra, lil_to_nil, n_translate, sil_to_lil
from .kt import d_translate, lkt_to_dkt, polytree_cert
from .s5 import h_labeled_to_hyper, hyper_to_seq_s5

__all__ = [
    'bunch_reconstruct', 'bunch_to_labels', 'lbi_to_gbi',
    'igv_to_glv',
    'eliminate_ref_tra', 'lil_to_nil', 'n_translate', 'sil_to_lil',
    'd_translate', 'lkt_to_dkt', 'polytree_cert',
    'h_labeled_to_hyper', 'hyper_to_seq_s5',
]
