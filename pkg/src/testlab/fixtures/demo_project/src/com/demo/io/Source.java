package com.demo.io;

public interface Source {
    Record next();

    boolean hasNext();

    default int skip(int n) {
        int skipped = 0;
        while (skipped < n && hasNext()) {
            next();
            skipped++;
        }
        return skipped;
    }
}
