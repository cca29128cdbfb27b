package com.demo.util;

public class Stats {
    private double[] window;
    private int count;

    public Stats(int capacity) {
        this.window = new double[capacity];
        this.count = 0;
    }

    public void add(double v) {
        if (count < window.length) {
            window[count] = v;
            count++;
        } else {
            for (int i = 1; i < window.length; i++) {
                window[i - 1] = window[i];
            }
            window[window.length - 1] = v;
        }
    }

    public double max() {
        double best = Double.NEGATIVE_INFINITY;
        for (int i = 0; i < count; i++) {
            if (window[i] > best) {
                best = window[i];
            }
        }
        return best;
    }

    public double variance() {
        if (count < 2) {
            return 0.0;
        }
        double m = MathOps.mean(slice());
        double total = 0.0;
        for (int i = 0; i < count; i++) {
            double d = window[i] - m;
            total += d * d;
        }
        return total / count;
    }

    private double[] slice() {
        double[] out = new double[count];
        for (int i = 0; i < count; i++) {
            out[i] = window[i];
        }
        return out;
    }

    public int getCount() { return count; }
}
