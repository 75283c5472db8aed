# paramono - monotone linear relations, Fitzpatrick functions and paramonotonicity
