"""Frozen high-precision reference values; regenerate with make_oracles.py."""

LOGGAMMA_3_4I = complex(-1.756626784603784110530604, 4.742664438034657928194889)
CGAMMA_07_02I_N2 = complex(0.9447521869498809139569006, -0.06680934034728746945440009)
HGAMMA_04_W11 = complex(0.7275111178762885692107304, 3.586906743788995152297971e-32)
HGAMMA_03_02I_WPI7 = complex(0.7227862365261581185763998, -0.09181161351185563527532782)
EGAMMA_Z_P_Q = complex(1.283256707582618967406494, 1.887469693433263504060867)
THETA_Z_Q = complex(0.2509482524471544674364956, 0.08065652745957036232932294)
JR_BETA = ((0.6+0.1j), (0.5-0.2j), (0.45+0.3j), (0.4+0j))
JR_GAMMA = ((0.1+0j), 0.2j, (-0-0.2j), (-0.05-0.2j))
JR_VALUE = complex(-247.0272970979882845844658, 151.1439940185236816882993)
ER_ALPHA = ((0.3+0.1j), (0.5-0.2j), (0.4+0.25j), (0.7+0j), (0.35-0.1j), (0.6+0.3j))
ER_VALUE = complex(2.121201588104847020049664, -3.292422997251488277931708)
