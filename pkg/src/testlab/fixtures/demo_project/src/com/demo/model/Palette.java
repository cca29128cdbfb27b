package com.demo.model;

public class Palette {
    private int[] colors;
    private int used;
    private Tag owner;

    public Palette(int capacity, Tag owner) {
        colors = new int[capacity];
        used = 0;
        this.owner = owner;
    }

    public boolean add(int rgb) {
        if (used >= colors.length) {
            return false;
        }
        for (int i = 0; i < used; i++) {
            if (colors[i] == rgb) {
                return false;
            }
        }
        colors[used] = rgb;
        used++;
        return true;
    }

    public int closest(int rgb) {
        int best = -1;
        int bestDist = Integer.MAX_VALUE;
        for (int i = 0; i < used; i++) {
            int d = distance(colors[i], rgb);
            if (d < bestDist) {
                bestDist = d;
                best = colors[i];
            }
        }
        return best;
    }

    private static int distance(int a, int b) {
        int dr = ((a >> 16) & 0xFF) - ((b >> 16) & 0xFF);
        int dg = ((a >> 8) & 0xFF) - ((b >> 8) & 0xFF);
        int db = (a & 0xFF) - (b & 0xFF);
        return dr * dr + dg * dg + db * db;
    }

    public Tag getOwner() { return owner; }

    public int getUsed() { return used; }
}
