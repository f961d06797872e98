"""Bound catalogs as text: (rate sum, signed mutual-information terms).

Entries are in the order of the original derivation, one per inequality.
Conditioning on the time-sharing symbol is omitted throughout.
"""

CMS2 = (
    ('R11', 'I(W;U1,V1,Y1)'),
    ('R11+R21', 'I(W,U1;V1,Y1)'),
    ('R11+R31', 'I(W,V1;U1,Y1) + I(W;V1) - I(W,U1,U2;V1)'),
    ('R11+R21+R31', 'I(W,U1,V1;Y1) + I(W,U1;V1) - I(W,U1,U2;V1)'),  # printed without the '+' between the first two terms
    ('R21', 'I(U1;U2,Y2) - I(W;U1)'),
    ('R22', 'I(U2;U1,Y2) - I(W;U2)'),
    ('R21+R22', 'I(U1,U2;Y2) + I(U1;U2) - I(W;U1) - I(W;U2)'),
    ('R31', 'I(V1;V3,Y3) - I(W,U1,U2;V1)'),
    ('R33', 'I(V3;V1,Y3) - I(W,U1,U2;V3)'),
    ('R31+R33', 'I(V1,V3;Y3) + I(V1;V3) - I(W,U1,U2;V3) - I(W,U1,U2;V1)'),
)

PMS2 = (
    ('R11', 'I(W;U1,V1,Y1)'),
    ('R11+R21', 'I(W,U1;V1,Y1)'),
    ('R11+R31', 'I(W,V1;U1,Y1)'),
    ('R11+R21+R31', 'I(W,U1,V1;Y1) + I(W,U1;V1) - I(W;V1)'),
    ('R21', 'I(U1;U2,Y2) - I(W;U1)'),
    ('R22', 'I(U2;U1,Y2) - I(W;U2)'),
    ('R21+R22', 'I(U1,U2;Y2) + I(U1;U2) - I(W;U1) - I(W;U2)'),
    ('R31', 'I(V1;V3,Y3) - I(W;V1)'),
    ('R33', 'I(V3;V1,Y3) - I(W;V3)'),
    ('R31+R33', 'I(V1,V3;Y3) + I(V1;V3) - I(W;V3) - I(W;V1)'),
)

CMS1 = (
    ('R10', 'I(W0;W1,U0,V0,Y1)'),
    ('R11', 'I(W1;W0,U0,V0,Y1)'),
    ('R10+R11', 'I(W0,W1;U0,V0,Y1) + I(W0;W1)'),
    ('R10+R20', 'I(W0,U0;W1,V0,Y1) + I(W0;U0) - I(W0,W1;U0)'),
    ('R10+R30', 'I(W0,V0;W1,U0,Y1) + I(W0;V0) - I(W0,W1,U0,U2;V0)'),
    ('R11+R20', 'I(W1,U0;W0,V0,Y1) + I(W1;U0) - I(W0,W1;U0)'),
    ('R11+R30', 'I(W1,V0;W0,U0,Y1) + I(W1;V0) - I(W0,W1,U0,U2;V0)'),
    ('R10+R11+R20', 'I(W0,W1,U0;V0,Y1) + I(W0,W1;U0) + I(W0;W1) - I(W0,W1;U0)'),
    ('R10+R11+R30', 'I(W0,W1,V0;U0,Y1) + I(W0,W1;V0) + I(W0;W1) - I(W0,W1,U0,U2;V0)'),
    ('R10+R20+R30', 'I(W0,U0,V0;W1,Y1) + I(W0,U0;V0) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0)'),
    ('R11+R20+R30', 'I(W1,U0,V0;W0,Y1) + I(W1,U0;V0) + I(W1;U0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0)'),
    ('R10+R11+R20+R30', 'I(W0,W1,U0,V0;Y1) + I(W0,W1,U0;V0) + I(W0,W1;U0) + I(W0;W1) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0)'),  # printed as I(W0,W1), a term with no separator
    ('R20', 'I(U0;W0,U2,V0,Y2) - I(W0,W1;U0)'),
    ('R22', 'I(U2;W0,U0,V0,Y2) - I(W0,W1;U2)'),
    ('R20+R22', 'I(U0,U2;W0,V0,Y2) + I(U0;U2) - I(W0,W1;U0) - I(W0,W1;U2)'),
    ('R10+R20', 'I(W0,U0;U2,V0,Y2) + I(W0;U0) - I(W0,W1;U0)'),
    ('R10+R22', 'I(W0,U2;U0,V0,Y2) + I(W0;U2) - I(W0,W1;U2)'),
    ('R20+R30', 'I(U0,V0;W0,U2,Y2) + I(U0;V0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0)'),
    ('R22+R30', 'I(U2,V0;W0,U0,Y2) + I(U2;V0) - I(W0,W1;U2) - I(W0,W1,U0,U2;V0)'),
    ('R10+R20+R22', 'I(W0,U0,U2;V0,Y2) + I(W0,U0;U2) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;U2)'),
    ('R10+R20+R30', 'I(W0,U0,V0;U2,Y2) + I(W0,U0;V0) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0)'),
    ('R10+R22+R30', 'I(W0,U2,V0;U0,Y2) + I(W0,U2;V0) + I(W0;U2) - I(W0,W1;U2) - I(W0,W1,U0,U2;V0)'),
    ('R20+R22+R30', 'I(U0,U2,V0;W0,Y2) + I(U0,U2;V0) + I(U0;U2) - I(W0,W1;U0) - I(W0,W1;U2) - I(W0,W1,U0,U2;V0)'),
    ('R10+R20+R22+R30', 'I(W0,U0,U2,V0;Y2) + I(W0,U0,U2;V0) + I(W0,U0;U2) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;U2) - I(W0,W1,U0,U2;V0)'),  # printed as I(W0,U0), a term with no separator
    ('R30', 'I(V0;W0,U0,V3,Y3) - I(W0,W1,U0,U2;V0)'),
    ('R33', 'I(V3;W0,U0,V0,Y3) - I(W0,W1,U0,U2;V3)'),
    ('R30+R33', 'I(V0,V3;W0,U0,Y3) + I(V0;V3) - I(W0,W1,U0,U2;V0) - I(W0,W1,U0,U2;V3)'),
    ('R10+R30', 'I(W0,V0;U0,V3,Y3) + I(W0;V0) - I(W0,W1,U0,U2;V0)'),
    ('R10+R33', 'I(W0,V3;U0,V0,Y3) + I(W0;V3) - I(W0,W1,U0,U2;V3)'),
    ('R20+R30', 'I(U0,V0;W0,V3,Y3) + I(U0;V0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0)'),
    ('R20+R33', 'I(U0,V3;W0,V0,Y3) + I(U0;V3) - I(W0,W1;U0) - I(W0,W1,U0,U2;V3)'),
    ('R10+R20+R30', 'I(W0,U0,V0;V3,Y3) + I(W0,U0;V0) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0)'),
    ('R10+R20+R33', 'I(W0,U0,V3;V0,Y3) + I(W0,U0;V3) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V3)'),
    ('R10+R30+R33', 'I(W0,V0,V3;U0,Y3) + I(W0,V0;V3) + I(W0;V0) - I(W0,W1,U0,U2;V0) - I(W0,W1,U0,U2;V3)'),
    ('R20+R30+R33', 'I(U0,V0,V3;W0,Y3) + I(U0,V0;V3) + I(U0;V0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0) - I(W0,W1,U0,U2;V3)'),
    ('R10+R20+R30+R33', 'I(W0,U0,V0,V3;Y3) + I(W0,U0,V0;V3) + I(W0,U0;V0) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1,U0,U2;V0) - I(W0,W1,U0,U2;V3)'),
)

PMS1 = (
    ('R10', 'I(W0;W1,U0,V0,Y1)'),
    ('R11', 'I(W1;W0,U0,V0,Y1)'),
    ('R10+R11', 'I(W0,W1;U0,V0,Y1) + I(W0;W1)'),
    ('R10+R20', 'I(W0,U0;W1,V0,Y1) + I(W0;U0) - I(W0,W1;U0)'),
    ('R10+R30', 'I(W0,V0;W1,U0,Y1) + I(W0;V0) - I(W0,W1;V0)'),
    ('R11+R20', 'I(W1,U0;W0,V0,Y1) + I(W1;U0) - I(W0,W1;U0)'),
    ('R11+R30', 'I(W1,V0;W0,U0,Y1) + I(W1;V0) - I(W0,W1;V0)'),
    ('R10+R11+R20', 'I(W0,W1,U0;V0,Y1) + I(W0,W1;U0) + I(W0;W1) - I(W0,W1;U0)'),
    ('R10+R11+R30', 'I(W0,W1,V0;U0,Y1) + I(W0,W1;V0) + I(W0;W1) - I(W0,W1;V0)'),
    ('R10+R20+R30', 'I(W0,U0,V0;W1,Y1) + I(W0,U0;V0) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;V0)'),
    ('R11+R20+R30', 'I(W1,U0,V0;W0,Y1) + I(W1,U0;V0) + I(W1;U0) - I(W0,W1;U0) - I(W0,W1;V0)'),
    ('R10+R11+R20+R30', 'I(W0,W1,U0,V0;Y1) + I(W0,W1,U0;V0) + I(W0,W1;U0) + I(W0;W1) - I(W0,W1;U0) - I(W0,W1;V0)'),  # printed as I(W0,W1), a term with no separator
    ('R20', 'I(U0;W0,U2,V0,Y2) - I(W0,W1;U0)'),
    ('R22', 'I(U2;W0,U0,V0,Y2) - I(W0,W1;U2)'),
    ('R20+R22', 'I(U0,U2;W0,V0,Y2) + I(U0;U2) - I(W0,W1;U0) - I(W0,W1;U2)'),
    ('R10+R20', 'I(W0,U0;U2,V0,Y2) + I(W0;U0) - I(W0,W1;U0)'),
    ('R10+R22', 'I(W0,U2;U0,V0,Y2) + I(W0;U2) - I(W0,W1;U2)'),
    ('R20+R30', 'I(U0,V0;W0,U2,Y2) + I(U0;V0) - I(W0,W1;U0) - I(W0,W1;V0)'),
    ('R22+R30', 'I(U2,V0;W0,U0,Y2) + I(U2;V0) - I(W0,W1;U2) - I(W0,W1;V0)'),
    ('R10+R20+R22', 'I(W0,U0,U2;V0,Y2) + I(W0,U0;U2) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;U2)'),
    ('R10+R20+R30', 'I(W0,U0,V0;U2,Y2) + I(W0,U0;V0) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;V0)'),
    ('R10+R22+R30', 'I(W0,U2,V0;U0,Y2) + I(W0,U2;V0) + I(W0;U2) - I(W0,W1;U2) - I(W0,W1;V0)'),
    ('R20+R22+R30', 'I(U0,U2,V0;W0,Y2) + I(U0,U2;V0) + I(U0;U2) - I(W0,W1;U0) - I(W0,W1;U2) - I(W0,W1;V0)'),
    ('R10+R20+R22+R30', 'I(W0,U0,U2,V0;Y2) + I(W0,U0,U2;V0) + I(W0,U0;U2) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;U2) - I(W0,W1;V0)'),  # printed as I(W0,U0), a term with no separator
    ('R30', 'I(V0;W0,U0,V3,Y3) - I(W0,W1;V0)'),
    ('R33', 'I(V3;W0,U0,V0,Y3) - I(W0,W1;V3)'),
    ('R30+R33', 'I(V0,V3;W0,U0,Y3) + I(V0;V3) - I(W0,W1;V0) - I(W0,W1;V3)'),
    ('R10+R30', 'I(W0,V0;U0,V3,Y3) + I(W0;V0) - I(W0,W1;V0)'),
    ('R10+R33', 'I(W0,V3;U0,V0,Y3) + I(W0;V3) - I(W0,W1;V3)'),
    ('R20+R30', 'I(U0,V0;W0,V3,Y3) + I(U0;V0) - I(W0,W1;U0) - I(W0,W1;V0)'),
    ('R20+R33', 'I(U0,V3;W0,V0,Y3) + I(U0;V3) - I(W0,W1;U0) - I(W0,W1;V3)'),
    ('R10+R20+R30', 'I(W0,U0,V0;V3,Y3) + I(W0,U0;V0) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;V0)'),
    ('R10+R20+R33', 'I(W0,U0,V3;V0,Y3) + I(W0,U0;V3) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;V3)'),
    ('R10+R30+R33', 'I(W0,V0,V3;U0,Y3) + I(W0,V0;V3) + I(W0;V0) - I(W0,W1;V0) - I(W0,W1;V3)'),
    ('R20+R30+R33', 'I(U0,V0,V3;W0,Y3) + I(U0,V0;V3) + I(U0;V0) - I(W0,W1;U0) - I(W0,W1;V0) - I(W0,W1;V3)'),
    ('R10+R20+R30+R33', 'I(W0,U0,V0,V3;Y3) + I(W0,U0,V0;V3) + I(W0,U0;V0) + I(W0;U0) - I(W0,W1;U0) - I(W0,W1;V0) - I(W0,W1;V3)'),
)
